//! Reference solver: the pawn game unfolded into its turn-based
//! configuration graph.
//!
//! Configuration vertices ⟨v, P(, r)⟩ belong to whoever controls v. After the
//! token moves from c to u the play passes through an intermediate vertex
//! ⟨u, c⟩ at which the grab decision is taken.
//!
//! Two engines share the same successor relation. [`expand`] materializes the
//! slice reachable from one configuration as a [`TurnBasedGame`]. The dense
//! engine indexes every node arithmetically and runs the attractor with
//! predecessors enumerated on the fly; it solves all configurations at once
//! and needs no edge storage.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::game::{Configuration, Mechanism, PawnGame, Player};
use crate::pawnset::PawnSet;
use crate::turnbased::{solve_turnbased, SolveResult, TurnBasedGame};

pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Largest pawn count the dense engine will index.
const DENSE_MAX_PAWNS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Config(Configuration),
    /// Token just moved to `to` from configuration `from`; grab decision pending.
    Inter { to: usize, from: Configuration },
}

impl Node {
    pub fn vertex(&self) -> usize {
        match self {
            Node::Config(c) => c.vertex,
            Node::Inter { to, .. } => *to,
        }
    }

    pub fn as_config(&self) -> Option<&Configuration> {
        match self {
            Node::Config(c) => Some(c),
            Node::Inter { .. } => None,
        }
    }
}

/// Player who chooses the successor of `node`.
pub fn node_owner(g: &PawnGame, node: &Node) -> Player {
    match node {
        Node::Config(c) => g.mover(c),
        Node::Inter { from, .. } => match g.mechanism() {
            Mechanism::KGrabbing(_) => Player::One,
            _ => g.mover(from).opponent(),
        },
    }
}

pub fn is_target_node(g: &PawnGame, node: &Node) -> bool {
    matches!(node, Node::Config(c) if g.is_target(c.vertex))
}

/// Successors in a fixed order: for intermediate vertices the no-grab option
/// comes first, then grabs (or gives) by increasing pawn id.
pub fn node_succ(g: &PawnGame, node: &Node) -> Vec<Node> {
    match node {
        Node::Config(c) => g
            .succ(c.vertex)
            .iter()
            .map(|&u| Node::Inter {
                to: u,
                from: c.clone(),
            })
            .collect(),
        Node::Inter { to, from } => {
            let d = g.pawn_count();
            let p = &from.p1;
            let at = |p1: PawnSet, r: Option<usize>| {
                Node::Config(Configuration {
                    vertex: *to,
                    p1,
                    grabs_left: r,
                })
            };
            let mut out = Vec::new();
            match g.mechanism() {
                Mechanism::OptionalGrabbing | Mechanism::AlwaysGrabbing => {
                    if g.mechanism() == Mechanism::OptionalGrabbing {
                        out.push(at(p.clone(), None));
                    }
                    match g.mover(from) {
                        Player::One => out.extend(p.iter().map(|j| at(p.without(j), None))),
                        Player::Two => out.extend(
                            (0..d)
                                .filter(|&j| !p.contains(j))
                                .map(|j| at(p.with(j), None)),
                        ),
                    }
                    assert!(!out.is_empty(), "grab move without a pawn to grab");
                }
                Mechanism::AlwaysGrabOrGive => {
                    for j in 0..d {
                        let q = if p.contains(j) { p.without(j) } else { p.with(j) };
                        out.push(at(q, None));
                    }
                }
                Mechanism::KGrabbing(_) => {
                    let r = from.grabs_left.expect("k-grabbing configuration carries r");
                    out.push(at(p.clone(), Some(r)));
                    if r > 0 {
                        out.extend(
                            (0..d)
                                .filter(|&j| !p.contains(j))
                                .map(|j| at(p.with(j), Some(r - 1))),
                        );
                    }
                }
            }
            out
        }
    }
}

/// Upper bound on the number of expansion nodes: |V|·2^d·(1 + max out-degree),
/// times (k+1) under k-grabbing.
pub fn estimate_nodes(g: &PawnGame) -> u128 {
    let maxdeg = (0..g.vertex_count())
        .map(|v| g.succ(v).len())
        .max()
        .unwrap_or(0) as u128;
    let layers = g.mechanism().grab_budget().map_or(1, |k| k as u128 + 1);
    let pow = if g.pawn_count() >= 100 {
        u128::MAX
    } else {
        1u128 << g.pawn_count()
    };
    (g.vertex_count() as u128)
        .saturating_mul(pow)
        .saturating_mul(1 + maxdeg)
        .saturating_mul(layers)
}

/// Materialized reachable slice of the configuration graph.
#[derive(Debug, Clone)]
pub struct ExpandedGame {
    pub tb: TurnBasedGame,
    pub nodes: Vec<Node>,
    pub index: HashMap<Node, usize>,
    /// Id of the initial configuration vertex.
    pub start: usize,
}

/// Heap cost of one materialized node in budget units, where an edge is one
/// unit. Nodes are stored twice (list and index) with their pawn sets.
pub const NODE_COST: u64 = 8;

/// Builds the slice reachable from `c`. Materialized nodes and edges count
/// against `budget` (see [`NODE_COST`]); the error reports the full-space
/// estimate.
pub fn expand(g: &PawnGame, c: &Configuration, budget: u64) -> Result<ExpandedGame> {
    g.check_config(c)?;
    let mut spent = NODE_COST;
    let start = Node::Config(c.clone());
    let mut nodes = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let node = nodes[i].clone();
        let mut out = Vec::new();
        for s in node_succ(g, &node) {
            spent += 1;
            let id = match index.get(&s) {
                Some(&id) => id,
                None => {
                    spent += NODE_COST;
                    if spent > budget {
                        return Err(Error::Budget {
                            estimate: estimate_nodes(g),
                            budget,
                        });
                    }
                    index.insert(s.clone(), nodes.len());
                    nodes.push(s);
                    nodes.len() - 1
                }
            };
            out.push(id);
        }
        succ.push(out);
        i += 1;
    }
    let players = nodes.iter().map(|n| node_owner(g, n)).collect();
    let targets = nodes.iter().map(|n| is_target_node(g, n)).collect();
    Ok(ExpandedGame {
        tb: TurnBasedGame::from_parts(players, succ, targets),
        nodes,
        index,
        start: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Dense when the full space fits the budget, otherwise materialized.
    #[default]
    Auto,
    Dense,
    Materialized,
}

#[derive(Debug, Clone, Copy)]
pub struct ExplicitOptions {
    pub budget: u64,
    pub engine: Engine,
}

impl Default for ExplicitOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            engine: Engine::Auto,
        }
    }
}

#[derive(Debug, Clone)]
enum Backend {
    Dense(Dense),
    Materialized(ExpandedGame, SolveResult),
}

/// Solved configuration graph. Answers level and strategy queries on nodes.
#[derive(Debug, Clone)]
pub struct ExplicitSolution {
    game: PawnGame,
    backend: Backend,
}

#[derive(Debug, Clone)]
pub struct ExplicitOutcome {
    pub winner: Player,
    pub solution: ExplicitSolution,
}

impl ExplicitSolution {
    pub fn game(&self) -> &PawnGame {
        &self.game
    }

    /// Number of nodes built or indexed.
    pub fn states(&self) -> u64 {
        match &self.backend {
            Backend::Dense(d) => d.level.len() as u64,
            Backend::Materialized(e, _) => e.nodes.len() as u64,
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.backend, Backend::Dense(_))
    }

    /// Attractor level of a node, `None` when Player 2 wins there.
    /// Panics for nodes the materialized engine never reached.
    pub fn level(&self, node: &Node) -> Option<u32> {
        match &self.backend {
            Backend::Dense(d) => d.level_of(&self.game, node),
            Backend::Materialized(e, r) => {
                let id = e.index.get(node).expect("node outside the expanded slice");
                r.level[*id]
            }
        }
    }

    pub fn contains(&self, node: &Node) -> bool {
        match &self.backend {
            Backend::Dense(_) => true,
            Backend::Materialized(e, _) => e.index.contains_key(node),
        }
    }

    pub fn wins(&self, c: &Configuration) -> bool {
        self.level(&Node::Config(c.clone())).is_some()
    }

    pub fn winner(&self, c: &Configuration) -> Player {
        if self.wins(c) {
            Player::One
        } else {
            Player::Two
        }
    }

    /// Move prescribed at `node` by the winning strategy of whoever wins
    /// there, when that player owns the node. Player 1 picks the successor of
    /// lowest level, ties going to the earliest in successor order.
    pub fn choice(&self, node: &Node) -> Option<Node> {
        let owner = node_owner(&self.game, node);
        let lvl = self.level(node);
        match (owner, lvl) {
            (Player::One, Some(l)) if l > 0 => node_succ(&self.game, node)
                .into_iter()
                .filter_map(|s| self.level(&s).map(|ls| (ls, s)))
                .min_by_key(|(ls, _)| *ls)
                .map(|(_, s)| s),
            (Player::Two, None) => node_succ(&self.game, node)
                .into_iter()
                .find(|s| self.level(s).is_none()),
            _ => None,
        }
    }

    /// The winner's strategy restricted to nodes reachable from `c` when the
    /// winner follows it and the opponent plays anything.
    pub fn witness(&self, c: &Configuration) -> Vec<(Node, Node)> {
        let start = Node::Config(c.clone());
        let winner = if self.level(&start).is_some() {
            Player::One
        } else {
            Player::Two
        };
        let mut seen = std::collections::HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(node) = queue.pop_front() {
            if winner == Player::One && is_target_node(&self.game, &node) {
                continue;
            }
            let next = if node_owner(&self.game, &node) == winner {
                let m = self.choice(&node).expect("winner has a move in its region");
                out.push((node, m.clone()));
                vec![m]
            } else {
                node_succ(&self.game, &node)
            };
            for s in next {
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        out
    }

    /// Plays the winner's strategy from `c` against `adversary`, stopping at a
    /// target configuration or after `max_steps` node transitions.
    pub fn play_out(
        &self,
        c: &Configuration,
        max_steps: usize,
        mut adversary: impl FnMut(&Node, &[Node]) -> Node,
    ) -> Vec<Node> {
        let mut node = Node::Config(c.clone());
        let winner = if self.level(&node).is_some() {
            Player::One
        } else {
            Player::Two
        };
        let mut play = vec![node.clone()];
        for _ in 0..max_steps {
            if is_target_node(&self.game, &node) {
                break;
            }
            node = if node_owner(&self.game, &node) == winner {
                self.choice(&node).expect("winner has a move in its region")
            } else {
                let succ = node_succ(&self.game, &node);
                adversary(&node, &succ)
            };
            play.push(node.clone());
        }
        play
    }
}

/// Decides the game from `c` with default options.
pub fn solve_explicit(g: &PawnGame, c: &Configuration) -> Result<ExplicitOutcome> {
    solve_explicit_with(g, c, ExplicitOptions::default())
}

pub fn solve_explicit_with(
    g: &PawnGame,
    c: &Configuration,
    opts: ExplicitOptions,
) -> Result<ExplicitOutcome> {
    g.check_config(c)?;
    let dense_ok = dense_size(g).is_some_and(|s| s <= opts.budget);
    let use_dense = match opts.engine {
        Engine::Dense => true,
        Engine::Materialized => false,
        Engine::Auto => dense_ok,
    };
    let solution = if use_dense {
        solve_all_with(g, opts.budget)?
    } else {
        let e = expand(g, c, opts.budget)?;
        let r = solve_turnbased(&e.tb);
        ExplicitSolution {
            game: g.clone(),
            backend: Backend::Materialized(e, r),
        }
    };
    let winner = solution.winner(c);
    Ok(ExplicitOutcome { winner, solution })
}

/// Solves every configuration of `g` with the dense engine.
pub fn solve_all(g: &PawnGame) -> Result<ExplicitSolution> {
    solve_all_with(g, DEFAULT_BUDGET)
}

pub fn solve_all_with(g: &PawnGame, budget: u64) -> Result<ExplicitSolution> {
    let size = dense_size(g).ok_or(Error::Budget {
        estimate: estimate_nodes(g),
        budget,
    })?;
    if size > budget {
        return Err(Error::Budget {
            estimate: size as u128,
            budget,
        });
    }
    Ok(ExplicitSolution {
        game: g.clone(),
        backend: Backend::Dense(Dense::solve(g)),
    })
}

/// Number of dense nodes: (k+1)·(|V|+|E|)·2^d, or `None` if not indexable.
pub fn dense_size(g: &PawnGame) -> Option<u64> {
    if g.pawn_count() > DENSE_MAX_PAWNS {
        return None;
    }
    let layers = g.mechanism().grab_budget().map_or(1, |k| k as u64 + 1);
    let slots = (g.vertex_count() + g.edge_count()) as u64;
    layers.checked_mul(slots)?.checked_mul(1u64 << g.pawn_count())
}

const UNWON: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Dense {
    n: usize,
    d: usize,
    layer: usize,
    edges: Vec<(usize, usize)>,
    out_start: Vec<usize>,
    level: Vec<u32>,
}

impl Dense {
    fn conf(&self, v: usize, p: usize, r: usize) -> usize {
        r * self.layer + (v << self.d | p)
    }

    fn inter(&self, e: usize, p: usize, r: usize) -> usize {
        r * self.layer + ((self.n + e) << self.d | p)
    }

    fn edge_id(&self, v: usize, u: usize) -> usize {
        let lo = self.out_start[v];
        let hi = self.out_start[v + 1];
        lo + self.edges[lo..hi]
            .binary_search(&(v, u))
            .expect("edge of the game")
    }

    fn level_of(&self, g: &PawnGame, node: &Node) -> Option<u32> {
        let idx = match node {
            Node::Config(c) => self.conf(
                c.vertex,
                c.p1.to_mask() as usize,
                c.grabs_left.unwrap_or(0),
            ),
            Node::Inter { to, from } => self.inter(
                self.edge_id(from.vertex, *to),
                from.p1.to_mask() as usize,
                from.grabs_left.unwrap_or(0),
            ),
        };
        debug_assert!(g.pawn_count() == self.d);
        let l = self.level[idx];
        (l != UNWON).then_some(l)
    }

    fn solve(g: &PawnGame) -> Dense {
        let n = g.vertex_count();
        let d = g.pawn_count();
        let full = (1usize << d) - 1;
        let mech = g.mechanism();
        let k = mech.grab_budget().unwrap_or(0);
        let layers = k + 1;
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let m = edges.len();
        let mut out_start = vec![0; n + 1];
        for &(v, _) in &edges {
            out_start[v + 1] += 1;
        }
        for v in 0..n {
            out_start[v + 1] += out_start[v];
        }
        let mut in_edges = vec![Vec::new(); n];
        for (e, &(_, u)) in edges.iter().enumerate() {
            in_edges[u].push(e);
        }
        let owner_mask: Vec<usize> = (0..n).map(|v| g.owners(v).to_mask() as usize).collect();
        let p1_moves = |v: usize, p: usize| owner_mask[v] & p != 0;
        let layer = (n + m) << d;
        let total = layers * layer;

        let mut dense = Dense {
            n,
            d,
            layer,
            edges,
            out_start,
            level: vec![UNWON; total],
        };

        // Remaining unwon successors, meaningful for Player 2 nodes only.
        let mut count = vec![0u32; total];
        // Owner flag: true for Player 1.
        let mut p1_owned = vec![false; total];
        for r in 0..layers {
            for v in 0..n {
                let deg = g.succ(v).len() as u32;
                for p in 0..=full {
                    let i = dense.conf(v, p, r);
                    count[i] = deg;
                    p1_owned[i] = p1_moves(v, p);
                }
            }
            for (e, &(v, _)) in dense.edges.iter().enumerate() {
                for p in 0..=full {
                    let i = dense.inter(e, p, r);
                    let mover_one = p1_moves(v, p);
                    let held = p.count_ones();
                    let (owner_one, c) = match mech {
                        Mechanism::OptionalGrabbing => {
                            (!mover_one, 1 + if mover_one { held } else { d as u32 - held })
                        }
                        Mechanism::AlwaysGrabbing => {
                            (!mover_one, if mover_one { held } else { d as u32 - held })
                        }
                        Mechanism::AlwaysGrabOrGive => (!mover_one, d as u32),
                        Mechanism::KGrabbing(_) => {
                            (true, 1 + if r > 0 { d as u32 - held } else { 0 })
                        }
                    };
                    count[i] = c;
                    p1_owned[i] = owner_one;
                }
            }
        }

        let mut queue: Vec<u32> = Vec::new();
        for r in 0..layers {
            for v in g.targets() {
                for p in 0..=full {
                    let i = dense.conf(v, p, r);
                    dense.level[i] = 0;
                    queue.push(i as u32);
                }
            }
        }

        let mut head = 0;
        while head < queue.len() {
            let x = queue[head] as usize;
            head += 1;
            let l = dense.level[x] + 1;
            let r = x / layer;
            let rest = x % layer;
            let slot = rest >> d;
            let p = rest & full;
            let mut relax = |y: usize, level: &mut Vec<u32>, queue: &mut Vec<u32>| {
                if level[y] != UNWON {
                    return;
                }
                if p1_owned[y] {
                    level[y] = l;
                    queue.push(y as u32);
                } else {
                    count[y] -= 1;
                    if count[y] == 0 {
                        level[y] = l;
                        queue.push(y as u32);
                    }
                }
            };
            if slot >= n {
                let (v, _) = dense.edges[slot - n];
                let y = dense.conf(v, p, r);
                relax(y, &mut dense.level, &mut queue);
                continue;
            }
            let u = slot;
            for &e in &in_edges[u] {
                let v = dense.edges[e].0;
                let inter = |p: usize, r: usize| r * layer + ((n + e) << d | p);
                match mech {
                    Mechanism::OptionalGrabbing | Mechanism::AlwaysGrabbing => {
                        if mech == Mechanism::OptionalGrabbing {
                            relax(inter(p, r), &mut dense.level, &mut queue);
                        }
                        for j in 0..d {
                            let bit = 1 << j;
                            if p & bit == 0 {
                                // Player 2 took j from Player 1 after his move.
                                let q = p | bit;
                                if p1_moves(v, q) {
                                    relax(inter(q, r), &mut dense.level, &mut queue);
                                }
                            } else {
                                // Player 1 took j after Player 2's move.
                                let q = p & !bit;
                                if !p1_moves(v, q) {
                                    relax(inter(q, r), &mut dense.level, &mut queue);
                                }
                            }
                        }
                    }
                    Mechanism::AlwaysGrabOrGive => {
                        for j in 0..d {
                            relax(inter(p ^ (1 << j), r), &mut dense.level, &mut queue);
                        }
                    }
                    Mechanism::KGrabbing(_) => {
                        relax(inter(p, r), &mut dense.level, &mut queue);
                        if r < k {
                            for j in 0..d {
                                if p >> j & 1 == 1 {
                                    relax(inter(p & !(1 << j), r + 1), &mut dense.level, &mut queue);
                                }
                            }
                        }
                    }
                }
            }
        }
        dense
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_game;

    const G1: &str = "pawngame g1
mechanism optional-grabbing
pawns 4
vertex v0 owners=0
vertex v1 owners=1
vertex s owners=2
vertex t owners=3 target
edge v0 v1
edge v1 s
edge v1 t
edge s s
edge t t
init vertex=v0 p1pawns=
";

    #[test]
    fn ovpp_optional_out_degree() {
        let (g, c) = parse_game(G1).unwrap();
        let e = expand(&g, &c, DEFAULT_BUDGET).unwrap();
        for (i, node) in e.nodes.iter().enumerate() {
            if let Node::Inter { from, .. } = node {
                let movable = match g.mover(from) {
                    Player::One => from.p1.len(),
                    Player::Two => g.pawn_count() - from.p1.len(),
                };
                assert_eq!(e.tb.succ(i).len(), movable + 1);
            }
        }
    }

    #[test]
    fn targets_are_configurations_on_t() {
        let (g, c) = parse_game(G1).unwrap();
        let t = g.vertex_by_name("t").unwrap();
        let sol = solve_all(&g).unwrap();
        for mask in 0..16u64 {
            let node = Node::Config(Configuration::new(t, PawnSet::from_mask(mask)));
            assert_eq!(sol.level(&node), Some(0));
        }
        let e = expand(&g, &c, DEFAULT_BUDGET).unwrap();
        for (i, node) in e.nodes.iter().enumerate() {
            assert_eq!(e.tb.is_target(i), matches!(node, Node::Config(c) if c.vertex == t));
        }
    }

    #[test]
    fn no_grab_when_budget_spent() {
        let text = G1.replace("optional-grabbing", "k-grabbing 2").replace(
            "p1pawns=",
            "p1pawns= grabs-left=0",
        );
        let (g, c) = parse_game(&text).unwrap();
        let e = expand(&g, &c, DEFAULT_BUDGET).unwrap();
        for (i, node) in e.nodes.iter().enumerate() {
            if matches!(node, Node::Inter { .. }) {
                assert_eq!(e.tb.succ(i).len(), 1);
            }
        }
    }

    #[test]
    fn budget_error() {
        let (g, c) = parse_game(G1).unwrap();
        let err = expand(&g, &c, 3).unwrap_err();
        assert!(matches!(err, Error::Budget { budget: 3, .. }));
    }
}
