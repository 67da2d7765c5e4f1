//! Always-grab-or-give games with unique owners reduce to a turn-based game.
//!
//! After every move the opponent of the mover decides who controls the next
//! vertex: she grabs its owner or gives away one of her pawns. So only the
//! controlling player matters, not the full pawn set. Main vertex ⟨v,i⟩
//! means the token is on v and Player i controls it; intermediate ⟨û,i⟩
//! means Player i decides who controls u.

use crate::error::{Error, Result};
use crate::game::{Configuration, Mechanism, OwnershipKind, PawnGame, Player};
use crate::turnbased::{solve_turnbased, TurnBasedGame};

#[derive(Debug, Clone)]
pub struct GogReduction {
    pub tb: TurnBasedGame,
}

impl GogReduction {
    /// Id of main vertex ⟨v, i⟩.
    pub fn main(v: usize, i: Player) -> usize {
        4 * v + if i == Player::One { 0 } else { 1 }
    }

    /// Id of intermediate vertex ⟨v̂, i⟩.
    pub fn hat(v: usize, i: Player) -> usize {
        4 * v + if i == Player::One { 2 } else { 3 }
    }
}

fn check(g: &PawnGame) -> Result<()> {
    if g.mechanism() != Mechanism::AlwaysGrabOrGive {
        return Err(Error::Precondition(format!(
            "expected grab-or-give, got {}",
            g.mechanism()
        )));
    }
    if g.classify() == OwnershipKind::Omvpp {
        return Err(Error::Precondition(
            "grab-or-give reduction needs a unique owner per vertex (OMVPP given)".into(),
        ));
    }
    Ok(())
}

/// With a single pawn nobody can give anything away, so control strictly
/// alternates and the keep edge ⟨û,3−i⟩ → ⟨u,i⟩ is left out.
pub fn reduce_grab_or_give(g: &PawnGame) -> Result<GogReduction> {
    check(g)?;
    let n = g.vertex_count();
    let mut players = Vec::with_capacity(4 * n);
    for _ in 0..n {
        players.extend([Player::One, Player::Two, Player::One, Player::Two]);
    }
    let mut targets = vec![false; 4 * n];
    for t in g.targets() {
        targets[GogReduction::main(t, Player::One)] = true;
        targets[GogReduction::main(t, Player::Two)] = true;
    }
    let mut edges = Vec::new();
    for (v, u) in g.edges() {
        for i in [Player::One, Player::Two] {
            let o = i.opponent();
            edges.push((GogReduction::main(v, i), GogReduction::hat(u, o)));
            if g.pawn_count() > 1 {
                edges.push((GogReduction::hat(u, o), GogReduction::main(u, i)));
            }
            edges.push((GogReduction::hat(u, o), GogReduction::main(u, o)));
        }
    }
    Ok(GogReduction {
        tb: TurnBasedGame::new(players, &edges, &targets_list(&targets))?,
    })
}

fn targets_list(t: &[bool]) -> Vec<usize> {
    (0..t.len()).filter(|&v| t[v]).collect()
}

pub fn solve_grab_or_give(g: &PawnGame, c: &Configuration) -> Result<Player> {
    g.check_config(c)?;
    let red = reduce_grab_or_give(g)?;
    let start = GogReduction::main(c.vertex, g.mover(c));
    Ok(solve_turnbased(&red.tb).winner(start))
}
