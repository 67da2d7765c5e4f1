//! SET-COVER → MVPP k-grabbing game.
//!
//! The token walks over the elements 1..n. At element i Player 1 picks a set
//! S_j containing i and the token lands on ⟨S_j, i⟩, owned by pawn j. Unless
//! Player 1 holds pawn j, Player 2 moves to the sink. So Player 1 wins iff
//! the sets he grabs, at most k of them, cover U.

use crate::error::{Error, Result};
use crate::game::{Configuration, GameBuilder, Mechanism, PawnGame};
use crate::pawnset::PawnSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCover {
    /// Universe {1, ..., n}.
    pub n: usize,
    /// Sets over 1..=n.
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetCover {
    /// Parses sets written as `1;1,2;2,3`.
    pub fn parse(n: usize, sets: &str, k: usize) -> Result<Self> {
        let mut out = Vec::new();
        for part in sets.split(';') {
            let mut s = Vec::new();
            for x in part.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let e: usize = x
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad element {x:?}")))?;
                s.push(e);
            }
            out.push(s);
        }
        let sc = SetCover { n, sets: out, k };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.sets {
            if let Some(&e) = s.iter().find(|&&e| e == 0 || e > self.n) {
                return Err(Error::Invalid(format!("element {e} outside 1..={}", self.n)));
            }
        }
        if self.n == 0 {
            return Err(Error::Invalid("empty universe".into()));
        }
        Ok(())
    }
}

impl std::fmt::Display for SetCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sets: Vec<String> = self
            .sets
            .iter()
            .map(|s| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "--universe {} --sets \"{}\" --k {}", self.n, sets.join(";"), self.k)
    }
}

/// Exhaustive check for a cover with at most `k` sets.
pub fn has_cover(sc: &SetCover) -> bool {
    let m = sc.sets.len();
    let full: u64 = (1u64 << sc.n) - 1;
    let masks: Vec<u64> = sc
        .sets
        .iter()
        .map(|s| s.iter().fold(0, |a, &e| a | 1 << (e - 1)))
        .collect();
    (0u64..1 << m).any(|pick| {
        pick.count_ones() as usize <= sc.k
            && (0..m)
                .filter(|&j| pick >> j & 1 == 1)
                .fold(0, |a, j| a | masks[j])
                == full
    })
}

/// Elements are `e1..en`, set positions `S<j>_<i>`. Pawn 0 owns the elements,
/// s and t; pawn j owns ⟨S_j, i⟩ for every i. An element no set contains
/// gets an edge to s, so reaching it loses for Player 1.
pub fn gen_setcover(sc: &SetCover) -> Result<(PawnGame, Configuration)> {
    sc.validate()?;
    let (n, m) = (sc.n, sc.sets.len());
    let mut b = GameBuilder::new("setcover");
    let p0 = b.pawn();
    let set_pawns: Vec<usize> = (0..m).map(|_| b.pawn()).collect();
    let elems: Vec<usize> = (1..=n).map(|i| b.vertex(format!("e{i}"), [p0])).collect();
    let mut pos = vec![vec![0; n]; m];
    for (j, row) in pos.iter_mut().enumerate() {
        for (i, slot) in row.iter_mut().enumerate() {
            *slot = b.vertex(format!("S{}_{}", j + 1, i + 1), [set_pawns[j]]);
        }
    }
    let s = b.vertex("s", [p0]);
    let t = b.vertex("t", [p0]);
    b.edge(s, s);
    b.edge(t, t);
    b.target(t);
    for i in 0..n {
        let mut covered = false;
        for (j, set) in sc.sets.iter().enumerate() {
            if set.contains(&(i + 1)) {
                b.edge(elems[i], pos[j][i]);
                covered = true;
            }
        }
        if !covered {
            b.edge(elems[i], s);
        }
        for row in &pos {
            b.edge(row[i], if i + 1 < n { elems[i + 1] } else { t });
            b.edge(row[i], s);
        }
    }
    let g = b.build(Mechanism::KGrabbing(sc.k))?;
    let c = Configuration::with_grabs(elems[0], PawnSet::from_iter([p0]), sc.k);
    Ok((g, c))
}
