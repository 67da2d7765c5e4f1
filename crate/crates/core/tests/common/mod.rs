//! Reference solver for the tests: Bellman iteration straight from the move
//! and grab rules, with no expansion graph.

#![allow(dead_code)]

use pawngame::gen::random::{random_pawngame, rng};
use pawngame::gen::RandomParams;
use pawngame::{Configuration, Mechanism, OwnershipKind, PawnGame, PawnSet, Player};

/// Pawn sets (as masks) and grab counters reachable right after a move from
/// ⟨·, mask, r⟩, plus the player who picks among them.
fn grab_options(g: &PawnGame, mover: Player, mask: u64, r: usize) -> (Player, Vec<(u64, usize)>) {
    let d = g.pawn_count();
    let all = 0..d;
    match g.mechanism() {
        Mechanism::OptionalGrabbing | Mechanism::AlwaysGrabbing => {
            let mut out = Vec::new();
            if g.mechanism() == Mechanism::OptionalGrabbing {
                out.push((mask, r));
            }
            for j in all {
                let mine = mask >> j & 1 == 1;
                if mover == Player::One && mine {
                    out.push((mask & !(1 << j), r));
                }
                if mover == Player::Two && !mine {
                    out.push((mask | 1 << j, r));
                }
            }
            (mover.opponent(), out)
        }
        Mechanism::AlwaysGrabOrGive => (mover.opponent(), all.map(|j| (mask ^ 1 << j, r)).collect()),
        Mechanism::KGrabbing(_) => {
            let mut out = vec![(mask, r)];
            if r > 0 {
                out.extend(all.filter(|&j| mask >> j & 1 == 0).map(|j| (mask | 1 << j, r - 1)));
            }
            (Player::One, out)
        }
    }
}

pub struct BruteForce {
    n: usize,
    d: usize,
    win: Vec<bool>,
}

impl BruteForce {
    pub fn solve(g: &PawnGame) -> Self {
        let n = g.vertex_count();
        let d = g.pawn_count();
        assert!(d <= 12, "reference solver is for tiny games");
        let layers = g.mechanism().grab_budget().map_or(1, |k| k + 1);
        let at = |v: usize, m: u64, r: usize| (r * n + v) << d | m as usize;
        let mut win = vec![false; (layers * n) << d];
        loop {
            let mut changed = false;
            for r in 0..layers {
                for v in 0..n {
                    for m in 0..1u64 << d {
                        if win[at(v, m, r)] {
                            continue;
                        }
                        let now = g.is_target(v) || {
                            let mover = g.controller(v, &PawnSet::from_mask(m));
                            let (chooser, opts) = grab_options(g, mover, m, r);
                            let good = |u: usize| {
                                let mut it = opts.iter().map(|&(m2, r2)| win[at(u, m2, r2)]);
                                if chooser == Player::One {
                                    it.any(|b| b)
                                } else {
                                    it.all(|b| b)
                                }
                            };
                            if mover == Player::One {
                                g.succ(v).iter().any(|&u| good(u))
                            } else {
                                g.succ(v).iter().all(|&u| good(u))
                            }
                        };
                        if now {
                            win[at(v, m, r)] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Self { n, d, win }
    }

    pub fn winner(&self, c: &Configuration) -> Player {
        let r = c.grabs_left.unwrap_or(0);
        let i = (r * self.n + c.vertex) << self.d | c.p1.to_mask() as usize;
        if self.win[i] {
            Player::One
        } else {
            Player::Two
        }
    }
}

pub fn mechanism_from(i: u8, k: usize) -> Mechanism {
    match i % 4 {
        0 => Mechanism::OptionalGrabbing,
        1 => Mechanism::AlwaysGrabbing,
        2 => Mechanism::AlwaysGrabOrGive,
        _ => Mechanism::KGrabbing(k),
    }
}

pub fn kind_from(i: u8) -> OwnershipKind {
    match i % 3 {
        0 => OwnershipKind::Ovpp,
        1 => OwnershipKind::Mvpp,
        _ => OwnershipKind::Omvpp,
    }
}

/// A random game with the requested shape; pawn count is adjusted so the
/// ownership kind is realizable.
pub fn game(n: usize, d: usize, kind: OwnershipKind, m: Mechanism, seed: u64) -> (PawnGame, Configuration) {
    let d = match kind {
        OwnershipKind::Ovpp => n,
        OwnershipKind::Omvpp => d.max(2),
        OwnershipKind::Mvpp => d,
    };
    random_pawngame(&RandomParams::new(n, d, kind, m), &mut rng(seed)).expect("valid parameters")
}
