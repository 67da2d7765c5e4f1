//! Attractor levels and strategies of a small turn-based game.

use pawngame::turnbased::{solve_turnbased, TurnBasedGame};
use pawngame::Player;

fn main() -> pawngame::Result<()> {
    // 0 (P2) → {1, 3}; 1 (P1) → {2, 0}; 2 target; 3 (P1) → {3, 2}
    let tb = TurnBasedGame::new(
        vec![Player::Two, Player::One, Player::One, Player::One],
        &[(0, 1), (0, 3), (1, 2), (1, 0), (2, 2), (3, 3), (3, 2)],
        &[2],
    )?;
    let r = solve_turnbased(&tb);
    for (i, w) in r.levels().iter().enumerate() {
        println!("W{i} = {w:?}");
    }
    for v in 0..tb.vertex_count() {
        println!("v{v}: {} wins, p1 move {:?}, p2 move {:?}", r.winner(v), r.p1_strategy[v], r.p2_strategy[v]);
    }
    Ok(())
}
