//! Lock & Key games: turn-based games whose edges carry locks and keys.
//!
//! A configuration is a vertex plus the set A of closed locks. An edge may be
//! taken only if none of its locks is closed; taking it toggles every lock
//! named by its keys. A configuration with no legal move loops on itself.

pub mod gadgets;
pub mod pipeline;
pub mod tb_to_optional;

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{syntax, Error, Result};
use crate::format::{key_value, parse_list, tokens};
use crate::game::Player;
use crate::turnbased::{solve_turnbased, SolveResult, TurnBasedGame};

pub use gadgets::{
    build_key_gadget, build_lock_gadget, GadgetPorts, GadgetRegistry, GadgetStateSpec, SharedPawns,
};
pub use pipeline::{delta_path_length, lockkey_to_optional, to_always_grabbing, AlwaysGrabbing, LkPipeline};
pub use tb_to_optional::{tb_to_optional, tb_to_optional_named, PrimedSkeleton};

/// Default cap on the number of locks expanded into V × 2^L.
pub const DEFAULT_LOCK_BUDGET: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LkEdge {
    pub from: usize,
    pub to: usize,
    /// λ(e), sorted.
    pub locks: Vec<usize>,
    /// κ(e), sorted; keys are named by their lock.
    pub keys: Vec<usize>,
}

impl LkEdge {
    pub fn plain(from: usize, to: usize) -> Self {
        Self {
            from,
            to,
            locks: Vec::new(),
            keys: Vec::new(),
        }
    }

    pub fn labeled(from: usize, to: usize, locks: &[usize], keys: &[usize]) -> Self {
        let norm = |s: &[usize]| {
            let mut v = s.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        Self {
            from,
            to,
            locks: norm(locks),
            keys: norm(keys),
        }
    }

    pub fn label_count(&self) -> usize {
        self.locks.len() + self.keys.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LockKeyGame {
    pub name: String,
    pub names: Vec<String>,
    pub players: Vec<Player>,
    pub targets: Vec<bool>,
    pub locks: usize,
    pub edges: Vec<LkEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LockConfig {
    pub vertex: usize,
    /// Closed locks, sorted.
    pub closed: Vec<usize>,
}

impl LockConfig {
    pub fn new(vertex: usize, closed: impl IntoIterator<Item = usize>) -> Self {
        let mut closed: Vec<usize> = closed.into_iter().collect();
        closed.sort_unstable();
        closed.dedup();
        Self { vertex, closed }
    }

    pub fn is_closed(&self, lock: usize) -> bool {
        self.closed.binary_search(&lock).is_ok()
    }
}

fn mask(locks: &[usize]) -> u64 {
    locks.iter().fold(0, |m, &l| m | 1 << l)
}

impl LockKeyGame {
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        players: Vec<Player>,
        targets: Vec<bool>,
        locks: usize,
        edges: Vec<LkEdge>,
    ) -> Result<Self> {
        let n = names.len();
        if players.len() != n || targets.len() != n {
            return Err(Error::Invalid("vertex attribute lengths differ".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for nm in &names {
            if !seen.insert(nm.as_str()) {
                return Err(Error::Invalid(format!("duplicate vertex name {nm}")));
            }
        }
        for e in &edges {
            if e.from >= n || e.to >= n {
                return Err(Error::Invalid(format!("edge ({},{}) out of range", e.from, e.to)));
            }
            if let Some(&l) = e.locks.iter().chain(&e.keys).find(|&&l| l >= locks) {
                return Err(Error::Invalid(format!("lock {l} out of range (locks {locks})")));
            }
        }
        Ok(Self {
            name: name.into(),
            names,
            players,
            targets,
            locks,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &LkEdge> + '_ {
        self.edges.iter().filter(move |e| e.from == v)
    }

    pub fn check_config(&self, c: &LockConfig) -> Result<()> {
        if c.vertex >= self.vertex_count() {
            return Err(Error::Invalid(format!("vertex {} out of range", c.vertex)));
        }
        if let Some(&l) = c.closed.iter().find(|&&l| l >= self.locks) {
            return Err(Error::Invalid(format!("closed lock {l} out of range")));
        }
        Ok(())
    }
}

/// The configuration graph over V × 2^L. Vertex id = v · 2^L + A.
#[derive(Debug, Clone)]
pub struct LockKeyExpansion {
    pub tb: TurnBasedGame,
    pub locks: usize,
}

impl LockKeyExpansion {
    pub fn id(&self, c: &LockConfig) -> usize {
        (c.vertex << self.locks) | mask(&c.closed) as usize
    }

    pub fn config(&self, id: usize) -> LockConfig {
        let a = id & ((1 << self.locks) - 1);
        LockConfig::new(id >> self.locks, (0..self.locks).filter(|l| a >> l & 1 == 1))
    }
}

fn check_budget(lk: &LockKeyGame, budget: usize) -> Result<()> {
    if lk.locks > budget || lk.locks >= 48 {
        return Err(Error::Budget {
            estimate: (lk.vertex_count() as u128) << lk.locks.min(127),
            budget: (lk.vertex_count() as u64) << budget.min(47),
        });
    }
    Ok(())
}

/// Successor configurations of ⟨v, A⟩ in edge order, before the self-loop rule.
fn legal_moves(lk: &LockKeyGame, v: usize, a: u64) -> impl Iterator<Item = (usize, u64)> + '_ {
    lk.out_edges(v)
        .filter(move |e| mask(&e.locks) & a == 0)
        .map(move |e| (e.to, a ^ mask(&e.keys)))
}

pub fn expand_lockkey(lk: &LockKeyGame) -> Result<LockKeyExpansion> {
    expand_lockkey_with(lk, DEFAULT_LOCK_BUDGET)
}

pub fn expand_lockkey_with(lk: &LockKeyGame, lock_budget: usize) -> Result<LockKeyExpansion> {
    check_budget(lk, lock_budget)?;
    let l = lk.locks;
    let size = lk.vertex_count() << l;
    let mut succ = vec![Vec::new(); size];
    let mut players = Vec::with_capacity(size);
    let mut targets = Vec::with_capacity(size);
    for v in 0..lk.vertex_count() {
        for a in 0..1u64 << l {
            let id = (v << l) | a as usize;
            let mut out: Vec<usize> = legal_moves(lk, v, a).map(|(u, b)| (u << l) | b as usize).collect();
            if out.is_empty() {
                out.push(id);
            }
            succ[id] = out;
            players.push(lk.players[v]);
            targets.push(lk.targets[v]);
        }
    }
    Ok(LockKeyExpansion {
        tb: TurnBasedGame::from_parts(players, succ, targets),
        locks: l,
    })
}

/// Solves the slice reachable from `c`.
pub fn solve_lockkey(lk: &LockKeyGame, c: &LockConfig) -> Result<Player> {
    lk.check_config(c)?;
    check_budget(lk, DEFAULT_LOCK_BUDGET)?;
    let start = (c.vertex, mask(&c.closed));
    let mut index = HashMap::from([(start, 0usize)]);
    let mut states = vec![start];
    let mut succ = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (v, a) = states[i];
        let mut out = Vec::new();
        for s in legal_moves(lk, v, a) {
            let id = *index.entry(s).or_insert_with(|| {
                states.push(s);
                states.len() - 1
            });
            out.push(id);
        }
        if out.is_empty() {
            out.push(i);
        }
        succ.push(out);
        i += 1;
    }
    let players = states.iter().map(|&(v, _)| lk.players[v]).collect();
    let targets = states.iter().map(|&(v, _)| lk.targets[v]).collect();
    let tb = TurnBasedGame::from_parts(players, succ, targets);
    let r: SolveResult = solve_turnbased(&tb);
    Ok(r.winner(0))
}

/// Replaces every edge with more than one label by a chain of single-labeled
/// edges: locks first, then keys, each in lock-id order.
///
/// Chain vertices take the source's player. When the source belongs to
/// Player 2 and the edge has several locks, a plain chain would let her enter
/// and get stuck on a later closed lock, which she could not do before. So
/// each later lock check happens at a Player 1 vertex that also offers a
/// guard path key(ℓ) then lock(ℓ) into a fresh target; the guard is passable
/// exactly when ℓ is closed.
///
/// The guard also takes away a stuck Player 2's win: before the split she
/// had no legal edge and kept the token forever. Such a source gets an extra
/// unlabeled edge to a Player 1 vertex from which he must show some original
/// out-edge is open, lock by lock, to reach the target.
pub fn split_labels(lk: &LockKeyGame) -> LockKeyGame {
    let mut out = lk.clone();
    out.edges.clear();
    let mut win = None;
    let mut fresh = 0usize;
    let mut new_vertex = |g: &mut LockKeyGame, base: &str, p: Player, target: bool| {
        let mut name = format!("{base}~{fresh}");
        while g.names.contains(&name) {
            fresh += 1;
            name = format!("{base}~{fresh}");
        }
        fresh += 1;
        g.names.push(name);
        g.players.push(p);
        g.targets.push(target);
        g.names.len() - 1
    };
    for e in &lk.edges {
        if e.label_count() <= 1 {
            out.edges.push(e.clone());
            continue;
        }
        let src_player = lk.players[e.from];
        let guarded = src_player == Player::Two && e.locks.len() > 1;
        let labels: Vec<(bool, usize)> = e
            .locks
            .iter()
            .map(|&l| (true, l))
            .chain(e.keys.iter().map(|&k| (false, k)))
            .collect();
        let base = lk.names[e.from].clone();
        let mut cur = e.from;
        for (i, &(is_lock, l)) in labels.iter().enumerate() {
            let next = if i + 1 == labels.len() {
                e.to
            } else {
                let next_is_guarded_lock = guarded && labels[i + 1].0;
                let p = if next_is_guarded_lock { Player::One } else { src_player };
                new_vertex(&mut out, &base, p, false)
            };
            let edge = if is_lock {
                LkEdge::labeled(cur, next, &[l], &[])
            } else {
                LkEdge::labeled(cur, next, &[], &[l])
            };
            out.edges.push(edge);
            if guarded && is_lock && i > 0 {
                let w = *win.get_or_insert_with(|| {
                    let w = new_vertex(&mut out, "win", Player::One, true);
                    out.edges.push(LkEdge::plain(w, w));
                    w
                });
                let y = new_vertex(&mut out, &base, Player::One, false);
                out.edges.push(LkEdge::labeled(cur, y, &[], &[l]));
                out.edges.push(LkEdge::labeled(y, w, &[l], &[]));
            }
            cur = next;
        }
    }
    for u in 0..lk.vertex_count() {
        let outs: Vec<&LkEdge> = lk.edges.iter().filter(|e| e.from == u).collect();
        let needs = lk.players[u] == Player::Two
            && outs.iter().any(|e| e.locks.len() > 1)
            && outs.iter().all(|e| !e.locks.is_empty());
        if !needs {
            continue;
        }
        let w = *win.get_or_insert_with(|| {
            let w = new_vertex(&mut out, "win", Player::One, true);
            out.edges.push(LkEdge::plain(w, w));
            w
        });
        let base = lk.names[u].clone();
        let s = new_vertex(&mut out, &base, Player::One, false);
        out.edges.push(LkEdge::plain(u, s));
        for e in outs {
            let mut cur = s;
            for (i, &l) in e.locks.iter().enumerate() {
                let next = if i + 1 == e.locks.len() {
                    w
                } else {
                    new_vertex(&mut out, &base, Player::One, false)
                };
                out.edges.push(LkEdge::labeled(cur, next, &[l], &[]));
                cur = next;
            }
        }
    }
    out
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn serialize_lockkey(lk: &LockKeyGame, c: Option<&LockConfig>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lockkeygame {}", lk.name);
    let _ = writeln!(out, "locks {}", lk.locks);
    for v in 0..lk.vertex_count() {
        let _ = write!(out, "vertex {} player={}", lk.names[v], lk.players[v]);
        if lk.targets[v] {
            out.push_str(" target");
        }
        out.push('\n');
    }
    for e in &lk.edges {
        let _ = write!(out, "edge {} {}", lk.names[e.from], lk.names[e.to]);
        if !e.locks.is_empty() {
            let _ = write!(out, " locks={}", join(&e.locks));
        }
        if !e.keys.is_empty() {
            let _ = write!(out, " keys={}", join(&e.keys));
        }
        out.push('\n');
    }
    if let Some(c) = c {
        let _ = writeln!(out, "init vertex={} closed={}", lk.names[c.vertex], join(&c.closed));
    }
    out
}

pub fn parse_lockkey(text: &str) -> Result<(LockKeyGame, Option<LockConfig>)> {
    let mut name = None;
    let mut locks = 0;
    let mut names = Vec::new();
    let mut players = Vec::new();
    let mut targets = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut raw_edges = Vec::new();
    let mut init = None;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = tokens(line);
        let Some(&head) = t.first() else { continue };
        if name.is_none() && head != "lockkeygame" {
            return Err(syntax(ln, "file must start with `lockkeygame <name>`"));
        }
        match head {
            "lockkeygame" => name = Some(t.get(1).copied().unwrap_or("").to_string()),
            "locks" => {
                locks = t
                    .get(1)
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| syntax(ln, "expected `locks <n>`"))?;
            }
            "vertex" => {
                let vname = *t.get(1).ok_or_else(|| syntax(ln, "vertex needs a name"))?;
                if index.contains_key(vname) {
                    return Err(syntax(ln, format!("duplicate vertex {vname}")));
                }
                let mut player = None;
                let mut target = false;
                for tok in &t[2..] {
                    match *tok {
                        "player=1" => player = Some(Player::One),
                        "player=2" => player = Some(Player::Two),
                        "target" => target = true,
                        _ => return Err(syntax(ln, format!("unexpected token {tok:?}"))),
                    }
                }
                index.insert(vname.to_string(), names.len());
                names.push(vname.to_string());
                players.push(player.ok_or_else(|| syntax(ln, "missing player=1|2"))?);
                targets.push(target);
            }
            "edge" => {
                if t.len() < 3 {
                    return Err(syntax(ln, "expected `edge <src> <dst> [locks=..] [keys=..]`"));
                }
                let (mut l, mut k) = (Vec::new(), Vec::new());
                for tok in &t[3..] {
                    if tok.starts_with("locks=") {
                        l = parse_list(ln, key_value(ln, tok, "locks")?)?;
                    } else if tok.starts_with("keys=") {
                        k = parse_list(ln, key_value(ln, tok, "keys")?)?;
                    } else {
                        return Err(syntax(ln, format!("unexpected token {tok:?}")));
                    }
                }
                raw_edges.push((ln, t[1].to_string(), t[2].to_string(), l, k));
            }
            "init" => {
                let (mut v, mut closed) = (None, Vec::new());
                for tok in &t[1..] {
                    if tok.starts_with("vertex=") {
                        v = Some(key_value(ln, tok, "vertex")?.to_string());
                    } else if tok.starts_with("closed=") {
                        closed = parse_list(ln, key_value(ln, tok, "closed")?)?;
                    } else {
                        return Err(syntax(ln, format!("unexpected token {tok:?}")));
                    }
                }
                init = Some((ln, v.ok_or_else(|| syntax(ln, "init needs vertex="))?, closed));
            }
            other => return Err(syntax(ln, format!("unknown directive {other:?}"))),
        }
    }
    let name = name.ok_or_else(|| syntax(1, "empty input"))?;
    let lookup = |ln: usize, v: &str| {
        index
            .get(v)
            .copied()
            .ok_or_else(|| syntax(ln, format!("unknown vertex {v:?}")))
    };
    let mut edges = Vec::new();
    for (ln, a, b, l, k) in &raw_edges {
        edges.push(LkEdge::labeled(lookup(*ln, a)?, lookup(*ln, b)?, l, k));
    }
    let lk = LockKeyGame::new(name, names, players, targets, locks, edges)?;
    let c = match init {
        Some((ln, v, closed)) => {
            let c = LockConfig::new(lookup(ln, &v)?, closed);
            lk.check_config(&c)?;
            Some(c)
        }
        None => None,
    };
    Ok((lk, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(first: LkEdge, second: LkEdge) -> LockKeyGame {
        LockKeyGame::new(
            "chain",
            vec!["v0".into(), "v1".into(), "t".into()],
            vec![Player::One; 3],
            vec![false, false, true],
            1,
            vec![first, second, LkEdge::plain(2, 2)],
        )
        .unwrap()
    }

    #[test]
    fn blocked_edge_loops() {
        let lk = LockKeyGame::new(
            "b",
            vec!["v0".into(), "t".into()],
            vec![Player::One; 2],
            vec![false, true],
            1,
            vec![LkEdge::labeled(0, 1, &[0], &[]), LkEdge::plain(1, 1)],
        )
        .unwrap();
        let x = expand_lockkey(&lk).unwrap();
        let id = x.id(&LockConfig::new(0, [0]));
        assert_eq!(x.tb.succ(id), &[id]);
        assert_eq!(solve_lockkey(&lk, &LockConfig::new(0, [0])).unwrap(), Player::Two);
        assert_eq!(solve_lockkey(&lk, &LockConfig::new(0, [])).unwrap(), Player::One);
    }

    #[test]
    fn key_toggles() {
        let lk = chain(LkEdge::labeled(0, 1, &[], &[0]), LkEdge::labeled(1, 2, &[0], &[]));
        assert_eq!(solve_lockkey(&lk, &LockConfig::new(0, [0])).unwrap(), Player::One);
        assert_eq!(solve_lockkey(&lk, &LockConfig::new(0, [])).unwrap(), Player::Two);
    }

    #[test]
    fn split_counts() {
        let lk = LockKeyGame::new(
            "s",
            vec!["a".into(), "b".into()],
            vec![Player::One; 2],
            vec![false, true],
            4,
            vec![LkEdge::labeled(0, 1, &[1, 2], &[3]), LkEdge::plain(1, 1)],
        )
        .unwrap();
        let s = split_labels(&lk);
        assert_eq!(s.edges.len(), 4);
        assert!(s.edges.iter().all(|e| e.label_count() <= 1));
        assert_eq!(split_labels(&s), s);
    }

    #[test]
    fn format_round_trip() {
        let lk = chain(LkEdge::labeled(0, 1, &[], &[0]), LkEdge::labeled(1, 2, &[0], &[]));
        let c = LockConfig::new(0, [0]);
        let text = serialize_lockkey(&lk, Some(&c));
        let (back, c2) = parse_lockkey(&text).unwrap();
        assert_eq!(back, lk);
        assert_eq!(c2, Some(c));
    }
}
