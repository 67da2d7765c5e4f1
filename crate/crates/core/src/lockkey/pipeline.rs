//! Lock & Key game → optional-grabbing game → always-grabbing game.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::game::{Configuration, GameBuilder, Mechanism, PawnGame};
use crate::pawnset::PawnSet;

use super::gadgets::{build_key_gadget, build_lock_gadget, GadgetPorts, GadgetRegistry, GadgetStateSpec, SinkPorts};
use super::tb_to_optional::{build_skeleton, skeleton_p1, PrimedSkeleton};
use super::{LockConfig, LockKeyGame};

#[derive(Debug, Clone)]
pub struct LkPipeline {
    pub game: PawnGame,
    pub config: Configuration,
    pub skeleton: PrimedSkeleton,
    pub gadgets: Vec<GadgetPorts>,
    /// Gadget indices replacing each Lock & Key edge, in edge order.
    pub chains: Vec<Vec<usize>>,
    pub spec: GadgetStateSpec,
}

/// Builds the optional-grabbing game. A labeled edge u → w becomes
/// u → G1 → ... → Gn → w′ with one gadget per label, locks first and then
/// keys, each in lock-id order. Vertices without outgoing edges get a loop
/// through their primed copy.
pub fn lockkey_to_optional(lk: &LockKeyGame, c: &LockConfig) -> Result<LkPipeline> {
    lk.check_config(c)?;
    let mut b = GameBuilder::new(format!("{}-optional", lk.name));
    let sk = build_skeleton(&mut b, &lk.names, &lk.players, &lk.targets);
    let ports = SinkPorts {
        sink: sk.sink(),
        target: sk.target(),
    };
    let mut reg = GadgetRegistry::new(lk.locks);
    let mut gadgets = Vec::new();
    let mut chains = Vec::new();
    for e in &lk.edges {
        let mut prev = e.from;
        let mut chain = Vec::new();
        for &l in &e.locks {
            let g = build_lock_gadget(&mut b, &mut reg, l, ports);
            b.edge(prev, g.input);
            prev = g.output;
            chain.push(gadgets.len());
            gadgets.push(g);
        }
        for &k in &e.keys {
            let g = build_key_gadget(&mut b, &mut reg, k, ports);
            b.edge(prev, g.input);
            prev = g.output;
            chain.push(gadgets.len());
            gadgets.push(g);
        }
        b.edge(prev, sk.primed(e.to));
        chains.push(chain);
    }
    for v in 0..lk.vertex_count() {
        if lk.out_edges(v).next().is_none() {
            b.edge(v, sk.primed(v));
        }
    }
    let spec = reg.state_spec();
    let mut p1 = skeleton_p1(&sk, &lk.players);
    for j in 0..lk.locks {
        if spec.pawns[j].is_some() {
            spec.realize(j, !c.is_closed(j), &mut p1);
        }
    }
    let game = b.build(Mechanism::OptionalGrabbing)?;
    Ok(LkPipeline {
        game,
        config: Configuration::new(c.vertex, p1),
        skeleton: sk,
        gadgets,
        chains,
        spec,
    })
}

/// Length of the shortest route v′ → x′ → w′ that avoids the sink, the
/// target and every other primed vertex. `v`, `x`, `w` are Lock & Key ids.
pub fn delta_path_length(p: &LkPipeline, v: usize, x: usize, w: usize) -> Option<usize> {
    let sk = &p.skeleton;
    let g = &p.game;
    let forbidden = |u: usize| {
        u == sk.sink()
            || u == sk.target()
            || (u >= sk.n && u < 2 * sk.n && u != sk.primed(x) && u != sk.primed(w))
    };
    let leg = |from: usize, to: usize| -> Option<usize> {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[from] = 0;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            if u == to {
                return Some(dist[u]);
            }
            for &y in g.succ(u) {
                if dist[y] == usize::MAX && (y == to || !forbidden(y) && y != sk.primed(w) && y != sk.primed(x)) {
                    dist[y] = dist[u] + 1;
                    q.push_back(y);
                }
            }
        }
        None
    };
    Some(leg(sk.primed(v), sk.primed(x))? + leg(sk.primed(x), sk.primed(w))?)
}

#[derive(Debug, Clone)]
pub struct AlwaysGrabbing {
    pub game: PawnGame,
    pub config: Configuration,
    pub fresh_vertices: Vec<usize>,
    /// Fresh pawns handed to Player 1 (the other half stays with Player 2).
    pub p1_fresh: Vec<usize>,
}

/// Adds 2(d+10) isolated self-looped vertices, each owned by its own fresh
/// pawn d + i. Player 1 starts with pawns d .. 2d+9.
pub fn to_always_grabbing(g: &PawnGame, c: &Configuration) -> Result<AlwaysGrabbing> {
    if g.mechanism() != Mechanism::OptionalGrabbing {
        return Err(Error::Precondition(format!(
            "expected optional-grabbing, got {}",
            g.mechanism()
        )));
    }
    g.check_config(c)?;
    let d = g.pawn_count();
    let mut b = GameBuilder::from_game(g);
    let mut fresh_vertices = Vec::new();
    for i in 0..2 * (d + 10) {
        let name = super::tb_to_optional::fresh_name(&b, &format!("iso{i}"));
        let (v, p) = b.solo_vertex(name);
        debug_assert_eq!(p, d + i);
        b.edge(v, v);
        fresh_vertices.push(v);
    }
    let p1_fresh: Vec<usize> = (d..2 * d + 10).collect();
    let p1: PawnSet = c.p1.iter().chain(p1_fresh.iter().copied()).collect();
    Ok(AlwaysGrabbing {
        game: b.build(Mechanism::AlwaysGrabbing)?,
        config: Configuration::new(c.vertex, p1),
        fresh_vertices,
        p1_fresh,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::lockkey::LkEdge;

    #[test]
    fn always_counts() {
        let mut b = GameBuilder::new("x");
        let (a, _) = b.solo_vertex("a");
        let (t, _) = b.solo_vertex("t");
        b.solo_vertex("u");
        b.edge(a, t);
        b.edge(t, t);
        b.edge(2, 2);
        b.target(t);
        let g = b.build(Mechanism::OptionalGrabbing).unwrap();
        let out = to_always_grabbing(&g, &Configuration::new(0, PawnSet::new())).unwrap();
        assert_eq!(out.fresh_vertices.len(), 26);
        assert_eq!(out.p1_fresh.len(), 13);
        assert_eq!(out.game.vertex_count(), 29);
        assert_eq!(out.game.mechanism(), Mechanism::AlwaysGrabbing);
    }

    #[test]
    fn pipeline_wires_chains() {
        let lk = LockKeyGame::new(
            "p",
            vec!["a".into(), "b".into()],
            vec![Player::One, Player::Two],
            vec![false, true],
            2,
            vec![LkEdge::labeled(0, 1, &[0], &[1])],
        )
        .unwrap();
        let p = lockkey_to_optional(&lk, &LockConfig::new(0, [1])).unwrap();
        assert_eq!(p.chains, vec![vec![0, 1]]);
        assert!(p.spec.lock_open(0, &p.config.p1));
        assert!(p.spec.key_closed(1, &p.config.p1));
        // a → lock(3) → key(5) → b′
        assert_eq!(delta_path_length(&p, 0, 1, 1), Some(1 + 1 + 3 + 1 + 5 + 1));
    }
}
