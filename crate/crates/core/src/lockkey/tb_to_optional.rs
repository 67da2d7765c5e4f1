//! Turn-based game → OVPP optional-grabbing game.
//!
//! Every edge u → v is routed through a fresh copy v′. Player 1 starts with
//! the pawns of V1 and of the copies of V2 vertices. A player who gets to move
//! at a vertex of the other player can be punished: v ∈ V1 has an edge to the
//! sink s and v ∈ V2 an edge to the target t.

use crate::error::{Error, Result};
use crate::game::{Configuration, GameBuilder, Mechanism, PawnGame, Player};
use crate::pawnset::PawnSet;
use crate::turnbased::TurnBasedGame;

/// Ids inside the output game: v, then v′ = n + v, then s = 2n, t = 2n + 1.
#[derive(Debug, Clone, Copy)]
pub struct PrimedSkeleton {
    pub n: usize,
}

impl PrimedSkeleton {
    pub fn plain(&self, v: usize) -> usize {
        v
    }

    pub fn primed(&self, v: usize) -> usize {
        self.n + v
    }

    pub fn sink(&self) -> usize {
        2 * self.n
    }

    pub fn target(&self) -> usize {
        2 * self.n + 1
    }
}

pub(crate) fn fresh_name(b: &GameBuilder, base: &str) -> String {
    let mut name = base.to_string();
    while b.has_name(&name) {
        name.push('_');
    }
    name
}

/// Adds v, v′, s, t with one pawn each, the edges v′ → v, v → s / v → t and
/// the sink/target self-loops. Original edges are left to the caller.
pub(crate) fn build_skeleton(
    b: &mut GameBuilder,
    names: &[String],
    players: &[Player],
    targets: &[bool],
) -> PrimedSkeleton {
    let n = names.len();
    for name in names {
        b.solo_vertex(name.clone());
    }
    for name in names {
        let primed = fresh_name(b, &format!("{name}'"));
        b.solo_vertex(primed);
    }
    let s = fresh_name(b, "s");
    b.solo_vertex(s);
    let t = fresh_name(b, "t");
    b.solo_vertex(t);
    let sk = PrimedSkeleton { n };
    for v in 0..n {
        b.edge(sk.primed(v), v);
        match players[v] {
            Player::One => b.edge(v, sk.sink()),
            Player::Two => b.edge(v, sk.target()),
        }
        if targets[v] {
            b.target(v);
        }
    }
    b.edge(sk.sink(), sk.sink());
    b.edge(sk.target(), sk.target());
    b.target(sk.target());
    sk
}

/// V′1 = V1 ∪ {v′ : v ∈ V2}, as pawn ids (pawn i owns skeleton vertex i).
pub(crate) fn skeleton_p1(sk: &PrimedSkeleton, players: &[Player]) -> PawnSet {
    (0..sk.n)
        .map(|v| match players[v] {
            Player::One => sk.plain(v),
            Player::Two => sk.primed(v),
        })
        .collect()
}

pub fn tb_to_optional(tb: &TurnBasedGame, v0: usize) -> Result<(PawnGame, Configuration)> {
    let names: Vec<String> = (0..tb.vertex_count()).map(|v| format!("v{v}")).collect();
    tb_to_optional_named(tb, &names, v0)
}

pub fn tb_to_optional_named(
    tb: &TurnBasedGame,
    names: &[String],
    v0: usize,
) -> Result<(PawnGame, Configuration)> {
    let n = tb.vertex_count();
    if let Some(v) = (0..n).find(|&v| tb.succ(v).is_empty()) {
        return Err(Error::Precondition(format!("vertex {} is a dead end", names[v])));
    }
    if v0 >= n {
        return Err(Error::Invalid(format!("start vertex {v0} out of range")));
    }
    let players: Vec<Player> = (0..n).map(|v| tb.player(v)).collect();
    let targets: Vec<bool> = (0..n).map(|v| tb.is_target(v)).collect();
    let mut b = GameBuilder::new("optional");
    let sk = build_skeleton(&mut b, names, &players, &targets);
    for u in 0..n {
        for &v in tb.succ(u) {
            b.edge(u, sk.primed(v));
        }
    }
    let g = b.build(Mechanism::OptionalGrabbing)?;
    let c = Configuration::new(v0, skeleton_p1(&sk, &players));
    Ok((g, c))
}
