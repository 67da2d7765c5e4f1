//! Growable bitset of pawn ids.

use std::fmt;

/// Set of pawn ids with no fixed upper bound.
///
/// Trailing zero words are always trimmed, so two sets with the same
/// members compare and hash equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PawnSet {
    words: Vec<u64>,
}

impl PawnSet {
    pub fn new() -> Self {
        Self { words: Vec::new() }
    }

    /// The set {0, 1, ..., d-1}.
    pub fn full(d: usize) -> Self {
        (0..d).collect()
    }

    /// Builds a set from the low bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self { words: vec![mask] };
        s.trim();
        s
    }

    /// Low 64 bits as a mask. Panics if a member is >= 64.
    pub fn to_mask(&self) -> u64 {
        assert!(self.words.len() <= 1, "pawn set does not fit in 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn contains(&self, p: usize) -> bool {
        self.words
            .get(p / 64)
            .is_some_and(|w| w >> (p % 64) & 1 == 1)
    }

    pub fn insert(&mut self, p: usize) -> bool {
        let (i, b) = (p / 64, p % 64);
        if self.words.len() <= i {
            self.words.resize(i + 1, 0);
        }
        let had = self.words[i] >> b & 1 == 1;
        self.words[i] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, p: usize) -> bool {
        let (i, b) = (p / 64, p % 64);
        let Some(w) = self.words.get_mut(i) else {
            return false;
        };
        let had = *w >> b & 1 == 1;
        *w &= !(1 << b);
        self.trim();
        had
    }

    pub fn with(&self, p: usize) -> Self {
        let mut s = self.clone();
        s.insert(p);
        s
    }

    pub fn without(&self, p: usize) -> Self {
        let mut s = self.clone();
        s.remove(p);
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest member plus one, or 0 when empty.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    pub fn is_subset(&self, other: &PawnSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersects(&self, other: &PawnSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &PawnSet) -> PawnSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        PawnSet { words }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

impl FromIterator<usize> for PawnSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PawnSet::new();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Debug for PawnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
