//! Pawn games: graph, ownership, mechanism and configurations.

use std::fmt;

use crate::error::{Error, Result};
use crate::pawnset::PawnSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mechanism {
    OptionalGrabbing,
    AlwaysGrabbing,
    AlwaysGrabOrGive,
    KGrabbing(usize),
}

impl Mechanism {
    pub fn grab_budget(self) -> Option<usize> {
        match self {
            Mechanism::KGrabbing(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mechanism::OptionalGrabbing => write!(f, "optional-grabbing"),
            Mechanism::AlwaysGrabbing => write!(f, "always-grabbing"),
            Mechanism::AlwaysGrabOrGive => write!(f, "grab-or-give"),
            Mechanism::KGrabbing(k) => write!(f, "k-grabbing {k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OwnershipKind {
    Ovpp,
    Mvpp,
    Omvpp,
}

impl fmt::Display for OwnershipKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OwnershipKind::Ovpp => "ovpp",
            OwnershipKind::Mvpp => "mvpp",
            OwnershipKind::Omvpp => "omvpp",
        })
    }
}

/// A token position plus the pawns Player 1 controls.
/// `grabs_left` is present exactly for k-grabbing games.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub vertex: usize,
    pub p1: PawnSet,
    pub grabs_left: Option<usize>,
}

impl Configuration {
    pub fn new(vertex: usize, p1: PawnSet) -> Self {
        Self {
            vertex,
            p1,
            grabs_left: None,
        }
    }

    pub fn with_grabs(vertex: usize, p1: PawnSet, r: usize) -> Self {
        Self {
            vertex,
            p1,
            grabs_left: Some(r),
        }
    }
}

/// Validated pawn game. Construct through [`PawnGame::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PawnGame {
    name: String,
    names: Vec<String>,
    succ: Vec<Vec<usize>>,
    targets: Vec<bool>,
    pawns: usize,
    owners: Vec<PawnSet>,
    mechanism: Mechanism,
}

/// Unvalidated parts of a pawn game.
#[derive(Debug, Clone, Default)]
pub struct GameSpec {
    pub name: String,
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub targets: Vec<usize>,
    pub pawns: usize,
    pub owners: Vec<PawnSet>,
}

impl PawnGame {
    pub fn new(spec: GameSpec, mechanism: Mechanism) -> Result<Self> {
        let n = spec.names.len();
        if spec.owners.len() != n {
            return Err(Error::Invalid(format!(
                "{} vertices but {} owner entries",
                n,
                spec.owners.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &spec.names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Invalid(format!("duplicate vertex name {name}")));
            }
        }
        for (v, o) in spec.owners.iter().enumerate() {
            if o.is_empty() {
                return Err(Error::Invalid(format!(
                    "vertex {} has no owner",
                    spec.names[v]
                )));
            }
            if o.bound() > spec.pawns {
                return Err(Error::Invalid(format!(
                    "vertex {} has pawn id out of range (pawns {})",
                    spec.names[v], spec.pawns
                )));
            }
        }
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in &spec.edges {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge ({a},{b}) out of range")));
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        if let Some(v) = succ.iter().position(|s| s.is_empty()) {
            return Err(Error::Invalid(format!(
                "vertex {} is a dead end",
                spec.names[v]
            )));
        }
        let mut targets = vec![false; n];
        for &t in &spec.targets {
            if t >= n {
                return Err(Error::Invalid(format!("target {t} out of range")));
            }
            targets[t] = true;
        }
        Ok(Self {
            name: spec.name,
            names: spec.names,
            succ,
            targets,
            pawns: spec.pawns,
            owners: spec.owners,
            mechanism,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn pawn_count(&self) -> usize {
        self.pawns
    }

    pub fn mechanism(&self) -> Mechanism {
        self.mechanism
    }

    pub fn with_mechanism(&self, mechanism: Mechanism) -> PawnGame {
        PawnGame {
            mechanism,
            ..self.clone()
        }
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Successors of `v` in increasing order.
    pub fn succ(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(v, s)| s.iter().map(move |&u| (v, u)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn is_target(&self, v: usize) -> bool {
        self.targets[v]
    }

    pub fn targets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.targets[v])
    }

    pub fn owners(&self, v: usize) -> &PawnSet {
        &self.owners[v]
    }

    /// Vertices owned by pawn `p`.
    pub fn owned_by(&self, p: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.owners[v].contains(p))
            .collect()
    }

    pub fn classify(&self) -> OwnershipKind {
        if self.owners.iter().any(|o| o.len() != 1) {
            return OwnershipKind::Omvpp;
        }
        let mut hit = vec![false; self.pawns];
        let mut injective = true;
        for o in &self.owners {
            let p = o.iter().next().expect("non-empty owner set");
            if std::mem::replace(&mut hit[p], true) {
                injective = false;
            }
        }
        if injective && self.vertex_count() == self.pawns {
            OwnershipKind::Ovpp
        } else {
            OwnershipKind::Mvpp
        }
    }

    /// Unique owner of `v`, when it has exactly one.
    pub fn sole_owner(&self, v: usize) -> Option<usize> {
        let o = &self.owners[v];
        (o.len() == 1).then(|| o.iter().next().unwrap())
    }

    pub fn controller(&self, v: usize, p1: &PawnSet) -> Player {
        if self.owners[v].intersects(p1) {
            Player::One
        } else {
            Player::Two
        }
    }

    pub fn mover(&self, c: &Configuration) -> Player {
        self.controller(c.vertex, &c.p1)
    }

    pub fn check_config(&self, c: &Configuration) -> Result<()> {
        if c.vertex >= self.vertex_count() {
            return Err(Error::Invalid(format!("vertex {} out of range", c.vertex)));
        }
        if c.p1.bound() > self.pawns {
            return Err(Error::Invalid("pawn id out of range in p1pawns".into()));
        }
        match (self.mechanism, c.grabs_left) {
            (Mechanism::KGrabbing(k), Some(r)) if r > k => Err(Error::Invalid(format!(
                "grabs-left {r} exceeds k = {k}"
            ))),
            (Mechanism::KGrabbing(_), None) => {
                Err(Error::Invalid("k-grabbing configuration without grabs-left".into()))
            }
            (Mechanism::KGrabbing(_), Some(_)) => Ok(()),
            (_, Some(_)) => Err(Error::Invalid(
                "grabs-left given for a mechanism without a grab counter".into(),
            )),
            (_, None) => Ok(()),
        }
    }

    /// Configuration at `v` with Player 1 holding `p1` and, for k-grabbing, all k grabs.
    pub fn config(&self, v: usize, p1: PawnSet) -> Configuration {
        Configuration {
            vertex: v,
            p1,
            grabs_left: self.mechanism.grab_budget(),
        }
    }

    /// Same game with vertices relabelled by `vperm` and pawns by `pperm`.
    pub fn permuted(&self, vperm: &[usize], pperm: &[usize]) -> PawnGame {
        let n = self.vertex_count();
        let mut names = vec![String::new(); n];
        let mut owners = vec![PawnSet::new(); n];
        let mut succ = vec![Vec::new(); n];
        let mut targets = vec![false; n];
        for v in 0..n {
            let w = vperm[v];
            names[w] = self.names[v].clone();
            owners[w] = self.owners[v].iter().map(|p| pperm[p]).collect();
            succ[w] = self.succ[v].iter().map(|&u| vperm[u]).collect();
            succ[w].sort_unstable();
            targets[w] = self.targets[v];
        }
        PawnGame {
            name: self.name.clone(),
            names,
            succ,
            targets,
            pawns: self.pawns,
            owners,
            mechanism: self.mechanism,
        }
    }
}

/// Incremental construction of a [`PawnGame`].
#[derive(Debug, Clone, Default)]
pub struct GameBuilder {
    spec: GameSpec,
}

impl GameBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            spec: GameSpec {
                name: name.into(),
                ..GameSpec::default()
            },
        }
    }

    /// Starts from an existing game's vertices, edges and pawns.
    pub fn from_game(g: &PawnGame) -> Self {
        Self {
            spec: GameSpec {
                name: g.name().to_string(),
                names: g.names().to_vec(),
                edges: g.edges().collect(),
                targets: g.targets().collect(),
                pawns: g.pawn_count(),
                owners: (0..g.vertex_count()).map(|v| g.owners(v).clone()).collect(),
            },
        }
    }

    /// Allocates a fresh pawn id.
    pub fn pawn(&mut self) -> usize {
        self.spec.pawns += 1;
        self.spec.pawns - 1
    }

    pub fn pawn_count(&self) -> usize {
        self.spec.pawns
    }

    pub fn vertex_count(&self) -> usize {
        self.spec.names.len()
    }

    pub fn vertex(&mut self, name: impl Into<String>, owners: impl IntoIterator<Item = usize>) -> usize {
        self.spec.names.push(name.into());
        self.spec.owners.push(owners.into_iter().collect());
        self.spec.names.len() - 1
    }

    /// Adds a vertex owned by a fresh pawn; returns (vertex, pawn).
    pub fn solo_vertex(&mut self, name: impl Into<String>) -> (usize, usize) {
        let p = self.pawn();
        (self.vertex(name, [p]), p)
    }

    pub fn edge(&mut self, a: usize, b: usize) {
        self.spec.edges.push((a, b));
    }

    pub fn target(&mut self, v: usize) {
        self.spec.targets.push(v);
    }

    pub fn has_name(&self, name: &str) -> bool {
        self.spec.names.iter().any(|n| n == name)
    }

    pub fn build(self, mechanism: Mechanism) -> Result<PawnGame> {
        PawnGame::new(self.spec, mechanism)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(owners: Vec<Vec<usize>>, pawns: usize) -> GameSpec {
        let n = owners.len();
        GameSpec {
            name: "t".into(),
            names: (0..n).map(|i| format!("v{i}")).collect(),
            edges: (0..n).map(|i| (i, (i + 1) % n)).collect(),
            targets: vec![0],
            pawns,
            owners: owners.into_iter().map(|o| o.into_iter().collect()).collect(),
        }
    }

    #[test]
    fn classification() {
        let g = PawnGame::new(spec(vec![vec![1], vec![0]], 2), Mechanism::OptionalGrabbing);
        assert_eq!(g.unwrap().classify(), OwnershipKind::Ovpp);
        let g = PawnGame::new(spec(vec![vec![0], vec![0]], 1), Mechanism::OptionalGrabbing);
        assert_eq!(g.unwrap().classify(), OwnershipKind::Mvpp);
        let g = PawnGame::new(spec(vec![vec![0, 1], vec![0]], 2), Mechanism::OptionalGrabbing);
        assert_eq!(g.unwrap().classify(), OwnershipKind::Omvpp);
    }

    #[test]
    fn at_least_one_owner_moves() {
        let g = PawnGame::new(
            spec(vec![vec![3, 5], vec![0], vec![1], vec![2], vec![4]], 6),
            Mechanism::OptionalGrabbing,
        )
        .unwrap();
        let c = Configuration::new(0, [5].into_iter().collect());
        assert_eq!(g.mover(&c), Player::One);
        let c = Configuration::new(0, [0, 1, 2, 4].into_iter().collect());
        assert_eq!(g.mover(&c), Player::Two);
    }

    #[test]
    fn rejects_bad_games() {
        let err = PawnGame::new(spec(vec![vec![], vec![0]], 1), Mechanism::OptionalGrabbing);
        assert!(matches!(err, Err(Error::Invalid(m)) if m.contains("has no owner")));
        let err = PawnGame::new(spec(vec![vec![2], vec![0]], 2), Mechanism::OptionalGrabbing);
        assert!(matches!(err, Err(Error::Invalid(m)) if m.contains("out of range")));
        let mut s = spec(vec![vec![0], vec![0]], 1);
        s.edges.pop();
        let err = PawnGame::new(s, Mechanism::OptionalGrabbing);
        assert!(matches!(err, Err(Error::Invalid(m)) if m.contains("dead end")));
    }
}
