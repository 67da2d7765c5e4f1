//! Depth-bounded AND-OR search for k-grabbing games with any ownership.
//!
//! A round is one token move followed by Player 1's grab decision. If Player 1
//! can win at all he can do so within |V|·(k+1) rounds, so the search stops
//! there and treats the cap as a loss.

use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::game::{Configuration, Mechanism, PawnGame, Player};
use crate::pawnset::PawnSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheMode {
    /// Plain depth-first search.
    Off,
    /// Reuse proven wins when the remaining depth covers the rounds they need.
    Wins,
    /// Also reuse losses proven with at least the current remaining depth.
    WinsAndLosses,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub cache: CacheMode,
    /// Rounds added on top of |V|·(k+1).
    pub extra_rounds: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cache: CacheMode::WinsAndLosses,
            extra_rounds: 0,
        }
    }
}

/// Player 1's winning strategy as a tree. `rounds` is the depth of the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vertex: usize,
    pub p1: PawnSet,
    pub grabs_left: usize,
    pub rounds: usize,
    pub step: WitnessStep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessStep {
    Target,
    /// Player 1 moves.
    Choose(Rc<Branch>),
    /// Player 2 moves; one branch per successor, in successor order.
    Respond(Vec<Rc<Branch>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub to: usize,
    pub grab: Option<usize>,
    pub next: Rc<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayStep {
    Move(usize),
    Grab(usize),
    NoGrab,
}

impl Witness {
    /// The play obtained by following the first branch wherever Player 2 moves.
    pub fn principal_play(&self) -> Vec<PlayStep> {
        let mut out = Vec::new();
        let mut w = self;
        loop {
            let b = match &w.step {
                WitnessStep::Target => return out,
                WitnessStep::Choose(b) => b,
                WitnessStep::Respond(bs) => &bs[0],
            };
            out.push(PlayStep::Move(b.to));
            out.push(b.grab.map_or(PlayStep::NoGrab, PlayStep::Grab));
            w = &b.next;
        }
    }

    /// Checks the tree against the game: legal moves, every Player 2 reply
    /// covered, grabs within budget, leaves on targets, depth within `cap`.
    pub fn validate(&self, g: &PawnGame, cap: usize) -> std::result::Result<(), String> {
        if self.rounds > cap {
            return Err(format!("witness needs {} rounds, cap {cap}", self.rounds));
        }
        self.check(g)
    }

    fn check(&self, g: &PawnGame) -> std::result::Result<(), String> {
        let v = self.vertex;
        let branches: Vec<&Rc<Branch>> = match &self.step {
            WitnessStep::Target => {
                return if g.is_target(v) {
                    Ok(())
                } else {
                    Err(format!("leaf at non-target {}", g.vertex_name(v)))
                };
            }
            WitnessStep::Choose(b) => {
                if g.controller(v, &self.p1) != Player::One {
                    return Err(format!("Player 1 moves at {} without control", g.vertex_name(v)));
                }
                vec![b]
            }
            WitnessStep::Respond(bs) => {
                if g.controller(v, &self.p1) != Player::Two {
                    return Err(format!("Player 2 branch at {}", g.vertex_name(v)));
                }
                let tos: Vec<usize> = bs.iter().map(|b| b.to).collect();
                if tos != g.succ(v) {
                    return Err(format!("replies at {} not covered", g.vertex_name(v)));
                }
                bs.iter().collect()
            }
        };
        for b in branches {
            if !g.succ(v).contains(&b.to) {
                return Err(format!("no edge {} -> {}", v, b.to));
            }
            let n = &b.next;
            let (p1, r) = match b.grab {
                None => (self.p1.clone(), self.grabs_left),
                Some(j) => {
                    if self.p1.contains(j) || j >= g.pawn_count() || self.grabs_left == 0 {
                        return Err(format!("illegal grab of pawn {j}"));
                    }
                    (self.p1.with(j), self.grabs_left - 1)
                }
            };
            if n.vertex != b.to || n.p1 != p1 || n.grabs_left != r || n.rounds + 1 > self.rounds {
                return Err("inconsistent successor node".into());
            }
            n.check(g)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct DfsOutcome {
    pub winner: Player,
    pub witness: Option<Rc<Witness>>,
    /// Search nodes visited.
    pub nodes: u64,
    pub cap: usize,
}

#[derive(Default)]
struct Entry {
    win: Option<Rc<Witness>>,
    /// Largest remaining depth at which a loss was proven.
    lost_at: Option<usize>,
}

struct Search<'g> {
    g: &'g PawnGame,
    opts: SearchOptions,
    memo: HashMap<(usize, PawnSet, usize), Entry>,
    nodes: u64,
}

/// Round bound |V|·(k+1).
pub fn round_cap(g: &PawnGame, k: usize) -> usize {
    g.vertex_count() * (k + 1)
}

pub fn solve_kgrab_dfs(g: &PawnGame, c: &Configuration) -> Result<DfsOutcome> {
    solve_kgrab_dfs_with(g, c, SearchOptions::default())
}

pub fn solve_kgrab_dfs_with(g: &PawnGame, c: &Configuration, opts: SearchOptions) -> Result<DfsOutcome> {
    let Mechanism::KGrabbing(k) = g.mechanism() else {
        return Err(Error::Precondition(format!(
            "expected k-grabbing, got {}",
            g.mechanism()
        )));
    };
    g.check_config(c)?;
    let cap = round_cap(g, k) + opts.extra_rounds;
    let mut s = Search {
        g,
        opts,
        memo: HashMap::new(),
        nodes: 0,
    };
    let r = c.grabs_left.expect("k-grabbing configuration carries r");
    let witness = s.eval(c.vertex, &c.p1, r, cap);
    Ok(DfsOutcome {
        winner: if witness.is_some() {
            Player::One
        } else {
            Player::Two
        },
        witness,
        nodes: s.nodes,
        cap,
    })
}

impl Search<'_> {
    /// Grab options after the token lands on `u`: none first, then owners of
    /// `u`, then the remaining pawns.
    fn grab_order(&self, u: usize, p: &PawnSet, r: usize) -> Vec<Option<usize>> {
        let mut out = vec![None];
        if r == 0 {
            return out;
        }
        let owners = self.g.owners(u);
        let free = (0..self.g.pawn_count()).filter(|&j| !p.contains(j));
        let (first, rest): (Vec<usize>, Vec<usize>) = free.partition(|&j| owners.contains(j));
        out.extend(first.into_iter().map(Some));
        out.extend(rest.into_iter().map(Some));
        out
    }

    fn eval(&mut self, v: usize, p: &PawnSet, r: usize, remaining: usize) -> Option<Rc<Witness>> {
        self.nodes += 1;
        if self.g.is_target(v) {
            return Some(Rc::new(Witness {
                vertex: v,
                p1: p.clone(),
                grabs_left: r,
                rounds: 0,
                step: WitnessStep::Target,
            }));
        }
        if remaining == 0 {
            return None;
        }
        let key = (v, p.clone(), r);
        if self.opts.cache != CacheMode::Off {
            if let Some(e) = self.memo.get(&key) {
                if let Some(w) = &e.win {
                    if w.rounds <= remaining {
                        return Some(w.clone());
                    }
                }
                if self.opts.cache == CacheMode::WinsAndLosses && e.lost_at.is_some_and(|l| l >= remaining) {
                    return None;
                }
            }
        }
        let g = self.g;
        let node = |rounds: usize, step: WitnessStep| {
            Rc::new(Witness {
                vertex: v,
                p1: p.clone(),
                grabs_left: r,
                rounds,
                step,
            })
        };
        let result = match g.controller(v, p) {
            Player::One => g
                .succ(v)
                .iter()
                .find_map(|&u| self.after_move(u, p, r, remaining - 1))
                .map(|b| node(1 + b.next.rounds, WitnessStep::Choose(b))),
            Player::Two => {
                let mut branches = Vec::new();
                let mut all = true;
                for &u in g.succ(v) {
                    match self.after_move(u, p, r, remaining - 1) {
                        Some(b) => branches.push(b),
                        None => {
                            all = false;
                            break;
                        }
                    }
                }
                all.then(|| {
                    let rounds = 1 + branches.iter().map(|b| b.next.rounds).max().unwrap();
                    node(rounds, WitnessStep::Respond(branches))
                })
            }
        };
        if self.opts.cache != CacheMode::Off {
            let e = self.memo.entry(key).or_default();
            match &result {
                Some(w) => {
                    if e.win.as_ref().is_none_or(|old| w.rounds < old.rounds) {
                        e.win = Some(w.clone());
                    }
                }
                None => e.lost_at = Some(e.lost_at.map_or(remaining, |l| l.max(remaining))),
            }
        }
        result
    }

    /// Player 1's grab decision after the token moved to `u`.
    fn after_move(&mut self, u: usize, p: &PawnSet, r: usize, remaining: usize) -> Option<Rc<Branch>> {
        for grab in self.grab_order(u, p, r) {
            let (q, rr) = match grab {
                None => (p.clone(), r),
                Some(j) => (p.with(j), r - 1),
            };
            if let Some(next) = self.eval(u, &q, rr, remaining) {
                return Some(Rc::new(Branch { to: u, grab, next }));
            }
        }
        None
    }
}
