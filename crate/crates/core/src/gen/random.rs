//! Seeded random instances. Every generator is deterministic in its RNG.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Configuration, GameSpec, Mechanism, OwnershipKind, PawnGame, Player};
use crate::lockkey::{LkEdge, LockConfig, LockKeyGame};
use crate::pawnset::PawnSet;
use crate::turnbased::TurnBasedGame;

use super::atm::{AtmSpec, Dir, Transition};
use super::setcover::SetCover;
use super::tqbf::{QbfSpec, Quantifier};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct RandomParams {
    pub vertices: usize,
    pub pawns: usize,
    pub kind: OwnershipKind,
    pub mechanism: Mechanism,
    /// Largest out-degree; every vertex gets between 1 and this many successors.
    pub max_out: usize,
}

impl RandomParams {
    pub fn new(vertices: usize, pawns: usize, kind: OwnershipKind, mechanism: Mechanism) -> Self {
        Self {
            vertices,
            pawns,
            kind,
            mechanism,
            max_out: 3,
        }
    }
}

pub fn gen_random_pawngame(p: &RandomParams, seed: u64) -> Result<(PawnGame, Configuration)> {
    random_pawngame(p, &mut rng(seed))
}

fn random_edges<R: Rng>(n: usize, max_out: usize, r: &mut R) -> Vec<(usize, usize)> {
    let all: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        let k = r.gen_range(1..=max_out.clamp(1, n));
        for &u in all.choose_multiple(r, k) {
            edges.push((v, u));
        }
    }
    edges
}

fn random_targets<R: Rng>(n: usize, r: &mut R) -> Vec<usize> {
    let mut t: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.2)).collect();
    if t.is_empty() {
        t.push(r.gen_range(0..n));
    }
    t
}

pub fn random_pawn_set<R: Rng>(d: usize, r: &mut R) -> PawnSet {
    (0..d).filter(|_| r.gen_bool(0.5)).collect()
}

/// Owner sets of the requested kind. OVPP needs d = n, OMVPP needs d ≥ 2.
/// For MVPP with d < n every pawn owns at least one vertex; with d = n one
/// pawn owns two vertices and another none.
pub fn random_owners<R: Rng>(n: usize, d: usize, kind: OwnershipKind, r: &mut R) -> Result<Vec<PawnSet>> {
    if n == 0 || d == 0 {
        return Err(Error::Invalid("need at least one vertex and one pawn".into()));
    }
    match kind {
        OwnershipKind::Ovpp => {
            if d != n {
                return Err(Error::Invalid(format!("OVPP needs pawns = vertices ({d} != {n})")));
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(r);
            Ok(perm.into_iter().map(|p| PawnSet::from_iter([p])).collect())
        }
        OwnershipKind::Mvpp => {
            let mut owner: Vec<usize> = (0..n).map(|_| r.gen_range(0..d)).collect();
            if d <= n {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(r);
                for (p, &v) in order.iter().take(d).enumerate() {
                    owner[v] = p;
                }
                if d == n && n > 1 {
                    // Otherwise the ownership would be one-vertex-per-pawn.
                    owner[order[n - 1]] = owner[order[0]];
                }
            }
            Ok(owner.into_iter().map(|p| PawnSet::from_iter([p])).collect())
        }
        OwnershipKind::Omvpp => {
            if d < 2 {
                return Err(Error::Invalid("OMVPP needs at least two pawns".into()));
            }
            let mut owners: Vec<PawnSet> = (0..n)
                .map(|_| {
                    let mut s = random_pawn_set(d, r);
                    if s.is_empty() {
                        s.insert(r.gen_range(0..d));
                    }
                    s
                })
                .collect();
            if owners.iter().all(|o| o.len() == 1) {
                let v = r.gen_range(0..n);
                let first = owners[v].iter().next().unwrap();
                owners[v].insert((first + 1 + r.gen_range(0..d - 1)) % d);
            }
            Ok(owners)
        }
    }
}

pub fn random_pawngame<R: Rng>(p: &RandomParams, r: &mut R) -> Result<(PawnGame, Configuration)> {
    let n = p.vertices;
    let owners = random_owners(n, p.pawns, p.kind, r)?;
    let spec = GameSpec {
        name: "random".into(),
        names: (0..n).map(|v| format!("v{v}")).collect(),
        edges: random_edges(n, p.max_out, r),
        targets: random_targets(n, r),
        pawns: p.pawns,
        owners,
    };
    let g = PawnGame::new(spec, p.mechanism)?;
    let v0 = r.gen_range(0..n);
    let c = g.config(v0, random_pawn_set(p.pawns, r));
    Ok((g, c))
}

pub fn random_turnbased<R: Rng>(n: usize, r: &mut R) -> (TurnBasedGame, usize) {
    let players = (0..n)
        .map(|_| if r.gen_bool(0.5) { Player::One } else { Player::Two })
        .collect();
    let edges = random_edges(n, 3, r);
    let targets = random_targets(n, r);
    let tb = TurnBasedGame::new(players, &edges, &targets).expect("well-formed random game");
    (tb, r.gen_range(0..n))
}

/// Random Lock & Key game; each edge carries up to two locks and two keys.
pub fn random_lockkey<R: Rng>(n: usize, locks: usize, r: &mut R) -> (LockKeyGame, LockConfig) {
    let mut edges = Vec::new();
    for (a, b) in random_edges(n, 3, r) {
        let pick = |r: &mut R| -> Vec<usize> {
            if locks == 0 {
                return Vec::new();
            }
            (0..r.gen_range(0..=2)).map(|_| r.gen_range(0..locks)).collect()
        };
        let l = if r.gen_bool(0.5) { pick(r) } else { Vec::new() };
        let k = if r.gen_bool(0.5) { pick(r) } else { Vec::new() };
        edges.push(LkEdge::labeled(a, b, &l, &k));
    }
    let players = (0..n)
        .map(|_| if r.gen_bool(0.5) { Player::One } else { Player::Two })
        .collect();
    let mut targets = vec![false; n];
    for t in random_targets(n, r) {
        targets[t] = true;
    }
    let names = (0..n).map(|v| format!("v{v}")).collect();
    let lk = LockKeyGame::new("random", names, players, targets, locks, edges).expect("in range");
    let closed: Vec<usize> = (0..locks).filter(|_| r.gen_bool(0.5)).collect();
    let c = LockConfig::new(r.gen_range(0..n), closed);
    (lk, c)
}

pub fn random_setcover<R: Rng>(max_n: usize, max_m: usize, r: &mut R) -> SetCover {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(1..=max_m);
    let sets = (0..m)
        .map(|_| (1..=n).filter(|_| r.gen_bool(0.4)).collect())
        .collect();
    SetCover {
        n,
        sets,
        k: r.gen_range(0..=m),
    }
}

pub fn random_qbf<R: Rng>(max_n: usize, max_m: usize, r: &mut R) -> QbfSpec {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(1..=max_m);
    let prefix = (0..n)
        .map(|_| if r.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall })
        .collect();
    let clauses = (0..m)
        .map(|_| {
            let len = r.gen_range(1..=n.min(3));
            let mut vars: Vec<i32> = (1..=n as i32).collect();
            vars.shuffle(r);
            vars.truncate(len);
            vars.into_iter()
                .map(|v| if r.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    QbfSpec { prefix, clauses }
}

/// Random machine with up to `max_states` working states, an accept and a
/// reject state, the given alphabet size and tape length.
pub fn random_atm<R: Rng>(max_states: usize, letters: usize, cells: usize, r: &mut R) -> AtmSpec {
    let k = r.gen_range(1..=max_states);
    let mut states: Vec<String> = (0..k).map(|i| format!("q{i}")).collect();
    states.push("qA".into());
    states.push("qR".into());
    let mut owners: Vec<Player> = (0..k)
        .map(|_| if r.gen_bool(0.5) { Player::One } else { Player::Two })
        .collect();
    owners.extend([Player::One, Player::One]);
    let mut transitions = Vec::new();
    for q in 0..k {
        for a in 0..letters {
            for _ in 0..r.gen_range(0..=2) {
                transitions.push(Transition {
                    from: q,
                    read: a,
                    to: r.gen_range(0..k + 2),
                    write: r.gen_range(0..letters),
                    dir: if r.gen_bool(0.5) { Dir::L } else { Dir::R },
                });
            }
        }
    }
    AtmSpec {
        states,
        owners,
        alphabet: (0..letters).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
        start: 0,
        accept: k,
        reject: k + 1,
        cells,
        transitions,
        word: (0..cells).map(|_| r.gen_range(0..letters)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_stable_and_kind() {
        for kind in [OwnershipKind::Ovpp, OwnershipKind::Mvpp, OwnershipKind::Omvpp] {
            let p = RandomParams::new(5, 5, kind, Mechanism::OptionalGrabbing);
            let a = gen_random_pawngame(&p, 7).unwrap();
            let b = gen_random_pawngame(&p, 7).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.0.classify(), kind);
        }
        let bad = RandomParams::new(5, 4, OwnershipKind::Ovpp, Mechanism::OptionalGrabbing);
        assert!(gen_random_pawngame(&bad, 1).is_err());
    }
}
