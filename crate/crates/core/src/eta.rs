//! Minimum number of grabs Player 1 needs, per vertex, in one-vertex-per-pawn
//! k-grabbing games.
//!
//! W_0 is Player 1's region in the turn-based game where he owns P0. Every
//! vertex on the border of W_ℓ is controlled by Player 2. A vertex gets
//! η = ℓ+1 when Player 1 can force the token onto the border of W_ℓ (or
//! into W_ℓ) in at least one move without grabbing; he then grabs the border
//! vertex and steps into W_ℓ.

use std::fmt;

use crate::error::{Error, Result};
use crate::game::{Configuration, Mechanism, OwnershipKind, PawnGame, Player};
use crate::pawnset::PawnSet;
use crate::turnbased::{solve_turnbased, TurnBasedGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EtaVariant {
    /// Levels of the configurations reached right after a move, when Player 1
    /// may still grab the token's vertex. η is read off with one more step.
    #[default]
    Arrival,
    /// Next level from non-trivial forcing into border ∪ W, where W holds
    /// the start-vertex winners.
    NonTrivial,
    /// Re-solve with the border alone as the target set at every level.
    BorderTargets,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinGrabMap {
    /// η per vertex, `None` for ∞.
    pub eta: Vec<Option<usize>>,
}

impl MinGrabMap {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.eta[v]
    }

    pub fn wins(&self, v: usize, k: usize) -> bool {
        self.eta[v].is_some_and(|e| e <= k)
    }
}

pub struct EtaValue(pub Option<usize>);

impl fmt::Display for EtaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(e) => write!(f, "{e}"),
            None => f.write_str("inf"),
        }
    }
}

fn check(g: &PawnGame) -> Result<()> {
    if g.classify() != OwnershipKind::Ovpp {
        return Err(Error::Precondition(format!(
            "expected an OVPP game, got {}",
            g.classify()
        )));
    }
    if !matches!(g.mechanism(), Mechanism::KGrabbing(_)) {
        return Err(Error::Precondition(format!(
            "expected k-grabbing, got {}",
            g.mechanism()
        )));
    }
    Ok(())
}

/// The turn-based game on the pawn graph where Player 1 owns the vertices of P0.
fn base_game(g: &PawnGame, p0: &PawnSet) -> TurnBasedGame {
    let n = g.vertex_count();
    let players = (0..n).map(|v| g.controller(v, p0)).collect();
    let succ = (0..n).map(|v| g.succ(v).to_vec()).collect();
    let targets = (0..n).map(|v| g.is_target(v)).collect();
    TurnBasedGame::from_parts(players, succ, targets)
}

fn border_of(tb: &TurnBasedGame, w: &[bool]) -> Vec<bool> {
    (0..w.len())
        .map(|u| !w[u] && tb.succ(u).iter().any(|&x| w[x]))
        .collect()
}

pub fn minimum_grabs(g: &PawnGame, p0: &PawnSet) -> Result<MinGrabMap> {
    minimum_grabs_with(g, p0, EtaVariant::default())
}

pub fn minimum_grabs_with(g: &PawnGame, p0: &PawnSet, variant: EtaVariant) -> Result<MinGrabMap> {
    check(g)?;
    let tb = base_game(g, p0);
    Ok(match variant {
        EtaVariant::Arrival => arrival_levels(&tb),
        EtaVariant::NonTrivial => nontrivial_levels(&tb),
        EtaVariant::BorderTargets => border_target_levels(&tb),
    })
}

/// A_0 is the attractor of T; A_{l+1} is the attractor of A_l and its border,
/// since a border vertex is won by grabbing it on arrival. A vertex that is
/// not a target and not Player 1's cannot be grabbed before the first move,
/// so its η is the worst level among its successors.
fn arrival_levels(tb: &TurnBasedGame) -> MinGrabMap {
    let n = tb.vertex_count();
    let mut arrive: Vec<Option<usize>> = vec![None; n];
    let mut targets: Vec<bool> = (0..n).map(|v| tb.is_target(v)).collect();
    for level in 0..=n {
        let r = solve_turnbased(&tb.with_targets(targets));
        let mut grew = false;
        for (v, a) in arrive.iter_mut().enumerate() {
            if r.wins(v) && a.is_none() {
                *a = Some(level);
                grew = true;
            }
        }
        if !grew && level > 0 {
            break;
        }
        let w: Vec<bool> = (0..n).map(|v| r.wins(v)).collect();
        let border = border_of(tb, &w);
        targets = (0..n).map(|v| w[v] || border[v]).collect();
    }
    let eta = (0..n)
        .map(|u| {
            if tb.is_target(u) || tb.player(u) == Player::One {
                arrive[u]
            } else {
                tb.succ(u)
                    .iter()
                    .map(|&x| arrive[x])
                    .try_fold(0, |m, a| a.map(|a| m.max(a)))
            }
        })
        .collect();
    MinGrabMap { eta }
}

fn nontrivial_levels(tb: &TurnBasedGame) -> MinGrabMap {
    let n = tb.vertex_count();
    let r0 = solve_turnbased(tb);
    let mut w: Vec<bool> = (0..n).map(|v| r0.wins(v)).collect();
    let mut eta: Vec<Option<usize>> = w.iter().map(|&x| x.then_some(0)).collect();
    let mut level = 0;
    loop {
        let border = border_of(tb, &w);
        assert!(
            (0..n).all(|u| !border[u] || tb.player(u) == Player::Two),
            "border vertex controlled by Player 1"
        );
        if !border.contains(&true) {
            break;
        }
        let targets: Vec<bool> = (0..n).map(|u| w[u] || border[u]).collect();
        let u = winning_nontrivially(&tb.with_targets(targets), &border);
        let mut grew = false;
        for v in 0..n {
            if u[v] && !w[v] {
                w[v] = true;
                eta[v] = Some(level + 1);
                grew = true;
            }
        }
        if !grew {
            break;
        }
        level += 1;
    }
    MinGrabMap { eta }
}

/// Vertices from which Player 1 forces the play into the target set of `tb`
/// in at least one move. `border` must be disjoint from the remaining targets
/// W; each border vertex u gets a copy u′ with successors N(u) ∖ W, and u
/// counts as winning iff u′ does.
pub fn winning_nontrivially(tb: &TurnBasedGame, border: &[bool]) -> Vec<bool> {
    let n = tb.vertex_count();
    let copies: Vec<usize> = (0..n).filter(|&u| border[u]).collect();
    let in_w = |v: usize| tb.is_target(v) && !border[v];
    let mut players: Vec<Player> = (0..n).map(|v| tb.player(v)).collect();
    let mut succ: Vec<Vec<usize>> = (0..n).map(|v| tb.succ(v).to_vec()).collect();
    let mut targets: Vec<bool> = (0..n).map(|v| tb.is_target(v)).collect();
    for &u in &copies {
        players.push(tb.player(u));
        succ.push(tb.succ(u).iter().copied().filter(|&v| !in_w(v)).collect());
        targets.push(false);
    }
    let g2 = TurnBasedGame::from_parts(players, succ, targets);
    let r = solve_turnbased(&g2);
    let mut out: Vec<bool> = (0..n).map(|u| !border[u] && r.wins(u)).collect();
    for (i, &u) in copies.iter().enumerate() {
        out[u] = r.wins(n + i);
    }
    out
}

fn border_target_levels(tb: &TurnBasedGame) -> MinGrabMap {
    let n = tb.vertex_count();
    let mut eta = vec![None; n];
    let mut targets: Vec<bool> = (0..n).map(|v| tb.is_target(v)).collect();
    for level in 0..=n {
        let r = solve_turnbased(&tb.with_targets(targets.clone()));
        let w: Vec<bool> = (0..n).map(|v| r.wins(v)).collect();
        for v in 0..n {
            if w[v] && eta[v].is_none() {
                eta[v] = Some(level);
            }
        }
        if eta.iter().all(Option::is_some) {
            break;
        }
        targets = border_of(tb, &w);
    }
    MinGrabMap { eta }
}

/// Player 1 wins from ⟨v, P0, r⟩ iff η(v) ≤ r.
pub fn solve_kgrab_ovpp(g: &PawnGame, c: &Configuration) -> Result<Player> {
    check(g)?;
    g.check_config(c)?;
    let r = c.grabs_left.expect("k-grabbing configuration carries r");
    let eta = minimum_grabs(g, &c.p1)?;
    Ok(if eta.wins(c.vertex, r) {
        Player::One
    } else {
        Player::Two
    })
}
