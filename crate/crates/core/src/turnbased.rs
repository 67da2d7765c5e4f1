//! Turn-based reachability games and the attractor.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::game::Player;

/// Reachability game in which each vertex belongs to one player.
/// Dead ends are allowed: a Player 2 dead end is won by Player 1 and a
/// Player 1 dead end is lost by him.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnBasedGame {
    players: Vec<Player>,
    succ: Vec<Vec<usize>>,
    targets: Vec<bool>,
}

impl TurnBasedGame {
    pub fn new(players: Vec<Player>, edges: &[(usize, usize)], targets: &[usize]) -> Result<Self> {
        let n = players.len();
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge ({a},{b}) out of range")));
            }
            succ[a].push(b);
        }
        let mut t = vec![false; n];
        for &v in targets {
            if v >= n {
                return Err(Error::Invalid(format!("target {v} out of range")));
            }
            t[v] = true;
        }
        Ok(Self::from_parts(players, succ, t))
    }

    /// Builds from adjacency lists; successor lists are sorted and deduplicated.
    pub fn from_parts(players: Vec<Player>, mut succ: Vec<Vec<usize>>, targets: Vec<bool>) -> Self {
        assert_eq!(players.len(), succ.len());
        assert_eq!(players.len(), targets.len());
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Self {
            players,
            succ,
            targets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.players.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn player(&self, v: usize) -> Player {
        self.players[v]
    }

    pub fn succ(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn is_target(&self, v: usize) -> bool {
        self.targets[v]
    }

    pub fn targets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.targets[v])
    }

    /// Same graph and players with a different target set.
    pub fn with_targets(&self, targets: Vec<bool>) -> TurnBasedGame {
        assert_eq!(targets.len(), self.vertex_count());
        TurnBasedGame {
            targets,
            ..self.clone()
        }
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.vertex_count()];
        for (v, s) in self.succ.iter().enumerate() {
            for &u in s {
                pred[u].push(v);
            }
        }
        pred
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Attractor level of each vertex in Player 1's region, `None` outside it.
    pub level: Vec<Option<u32>>,
    pub p1_strategy: Vec<Option<usize>>,
    pub p2_strategy: Vec<Option<usize>>,
}

impl SolveResult {
    pub fn wins(&self, v: usize) -> bool {
        self.level[v].is_some()
    }

    pub fn winner(&self, v: usize) -> Player {
        if self.wins(v) {
            Player::One
        } else {
            Player::Two
        }
    }

    pub fn region(&self) -> Vec<usize> {
        (0..self.level.len()).filter(|&v| self.wins(v)).collect()
    }

    /// Cumulative level sets W_0 ⊆ W_1 ⊆ ... up to the fixed point.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let top = self.level.iter().flatten().copied().max();
        let Some(top) = top else {
            return vec![Vec::new()];
        };
        (0..=top)
            .map(|i| {
                (0..self.level.len())
                    .filter(|&v| self.level[v].is_some_and(|l| l <= i))
                    .collect()
            })
            .collect()
    }
}

/// Cumulative attractor levels W_0 = T, W_1, ... to the fixed point.
pub fn attractor_levels(tb: &TurnBasedGame) -> Vec<Vec<usize>> {
    solve_turnbased(tb).levels()
}

/// Attractor with per-vertex successor counters; linear in |V| + |E|.
pub fn solve_turnbased(tb: &TurnBasedGame) -> SolveResult {
    let n = tb.vertex_count();
    let pred = tb.predecessors();
    let mut level: Vec<Option<u32>> = vec![None; n];
    let mut count: Vec<usize> = (0..n).map(|v| tb.succ[v].len()).collect();
    let mut queue = VecDeque::new();
    for v in tb.targets() {
        level[v] = Some(0);
        queue.push_back(v);
    }
    // Player 2 dead ends are won vacuously.
    for v in 0..n {
        if level[v].is_none() && tb.players[v] == Player::Two && count[v] == 0 {
            level[v] = Some(1);
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let l = level[u].unwrap();
        for &v in &pred[u] {
            if level[v].is_some() {
                continue;
            }
            match tb.players[v] {
                Player::One => {
                    level[v] = Some(l + 1);
                    queue.push_back(v);
                }
                Player::Two => {
                    count[v] -= 1;
                    if count[v] == 0 {
                        level[v] = Some(l + 1);
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    let mut p1_strategy = vec![None; n];
    let mut p2_strategy = vec![None; n];
    for v in 0..n {
        match (tb.players[v], level[v]) {
            (Player::One, Some(l)) if l > 0 => {
                p1_strategy[v] = tb.succ[v]
                    .iter()
                    .copied()
                    .filter(|&u| level[u].is_some())
                    .min_by_key(|&u| (level[u].unwrap(), u));
            }
            (Player::Two, None) => {
                p2_strategy[v] = tb.succ[v].iter().copied().find(|&u| level[u].is_none());
            }
            _ => {}
        }
    }
    SolveResult {
        level,
        p1_strategy,
        p2_strategy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_target() {
        let tb = TurnBasedGame::new(vec![Player::One], &[(0, 0)], &[0]).unwrap();
        assert_eq!(attractor_levels(&tb), vec![vec![0]]);
    }

    #[test]
    fn forced_chain() {
        // v2 (P2) -> v1 (P1) -> t
        let tb = TurnBasedGame::new(
            vec![Player::One, Player::One, Player::Two],
            &[(0, 0), (1, 0), (2, 1)],
            &[0],
        )
        .unwrap();
        let r = solve_turnbased(&tb);
        assert_eq!(r.region(), vec![0, 1, 2]);
        assert_eq!(r.levels(), vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(r.p1_strategy[1], Some(0));
    }

    #[test]
    fn dead_ends() {
        let tb = TurnBasedGame::new(vec![Player::One, Player::Two], &[], &[]).unwrap();
        let r = solve_turnbased(&tb);
        assert!(!r.wins(0));
        assert!(r.wins(1));
    }

    #[test]
    fn escape_keeps_player_two_out() {
        // 0 (P2) -> {1 target, 2}; 2 self-loop
        let tb = TurnBasedGame::new(
            vec![Player::Two, Player::One, Player::One],
            &[(0, 1), (0, 2), (1, 1), (2, 2)],
            &[1],
        )
        .unwrap();
        let r = solve_turnbased(&tb);
        assert!(!r.wins(0));
        assert_eq!(r.p2_strategy[0], Some(2));
    }
}
