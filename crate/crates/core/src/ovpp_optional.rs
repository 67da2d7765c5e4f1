//! Polynomial solver for one-vertex-per-pawn optional-grabbing games.
//!
//! The region W grows by three rules until the initial vertex is covered or
//! no rule applies:
//! - closure: u joins when every successor is in W, whoever controls u;
//! - border: among B = {u ∉ W : N(u) ∩ W ≠ ∅}, vertices whose successors all
//!   lie in B ∪ W join;
//! - trap: vertices outside P0 whose successors all lie in B join, since
//!   Player 1 can leave them with Player 2 and grab at the next step.
//!
//! Player 1 also wins at once when v0 is on the border and he controls it.

use crate::error::{Error, Result};
use crate::game::{Configuration, Mechanism, OwnershipKind, PawnGame, Player};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Target,
    Closure,
    Border,
    Trap,
}

/// One pass of the main loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// W_i at the start of the pass.
    pub w: Vec<usize>,
    pub border: Option<Vec<usize>>,
    pub border_closed: Option<Vec<usize>>,
    pub trap: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct Alg1Outcome {
    pub winner: Player,
    pub trace: Vec<TraceStep>,
    /// Level and rule by which each vertex entered W, if it did.
    pub added: Vec<Option<(usize, Rule)>>,
}

fn members(set: &[bool]) -> Vec<usize> {
    (0..set.len()).filter(|&v| set[v]).collect()
}

pub fn solve_ovpp_optional(g: &PawnGame, c: &Configuration) -> Result<Alg1Outcome> {
    if g.classify() != OwnershipKind::Ovpp {
        return Err(Error::Precondition(format!(
            "expected an OVPP game, got {}",
            g.classify()
        )));
    }
    if g.mechanism() != Mechanism::OptionalGrabbing {
        return Err(Error::Precondition(format!(
            "expected optional-grabbing, got {}",
            g.mechanism()
        )));
    }
    g.check_config(c)?;
    let n = g.vertex_count();
    let v0 = c.vertex;
    let in_p0: Vec<bool> = (0..n)
        .map(|v| c.p1.contains(g.sole_owner(v).unwrap()))
        .collect();

    let mut w = vec![false; n];
    let mut added = vec![None; n];
    for t in g.targets() {
        w[t] = true;
        added[t] = Some((0, Rule::Target));
    }
    let mut level = 0;
    let mut trace = Vec::new();
    let all_in = |set: &[bool], u: usize| g.succ(u).iter().all(|&x| set[x]);

    let winner = loop {
        let mut step = TraceStep {
            w: members(&w),
            border: None,
            border_closed: None,
            trap: None,
        };
        if w[v0] {
            trace.push(step);
            break Player::One;
        }
        let closure: Vec<usize> = (0..n).filter(|&u| !w[u] && all_in(&w, u)).collect();
        if !closure.is_empty() {
            level += 1;
            for u in closure {
                w[u] = true;
                added[u] = Some((level, Rule::Closure));
            }
            trace.push(step);
            continue;
        }
        let border: Vec<bool> = (0..n)
            .map(|u| !w[u] && g.succ(u).iter().any(|&x| w[x]))
            .collect();
        step.border = Some(members(&border));
        if !border.contains(&true) {
            trace.push(step);
            break Player::Two;
        }
        if border[v0] && in_p0[v0] {
            trace.push(step);
            break Player::One;
        }
        let both: Vec<bool> = (0..n).map(|u| border[u] || w[u]).collect();
        let closed: Vec<usize> = (0..n).filter(|&u| border[u] && all_in(&both, u)).collect();
        step.border_closed = Some(closed.clone());
        if !closed.is_empty() {
            level += 1;
            for u in closed {
                w[u] = true;
                added[u] = Some((level, Rule::Border));
            }
            trace.push(step);
            continue;
        }
        let trap: Vec<usize> = (0..n).filter(|&u| all_in(&border, u)).collect();
        step.trap = Some(trap.clone());
        // Members already in W would not grow the region; without this the
        // loop would repeat the same pass forever.
        let fresh: Vec<usize> = trap.into_iter().filter(|&u| !in_p0[u] && !w[u]).collect();
        trace.push(step);
        if fresh.is_empty() {
            break Player::Two;
        }
        level += 1;
        for u in fresh {
            w[u] = true;
            added[u] = Some((level, Rule::Trap));
        }
    };
    Ok(Alg1Outcome {
        winner,
        trace,
        added,
    })
}
