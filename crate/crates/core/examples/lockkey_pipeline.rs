//! A Lock & Key game solved directly, after splitting labels, and through
//! the optional- and always-grabbing pawn games.

use pawngame::lockkey::{lockkey_to_optional, parse_lockkey, solve_lockkey, split_labels, to_always_grabbing};

fn main() -> pawngame::Result<()> {
    let (lk, c) = parse_lockkey(include_str!("../data/door.lk"))?;
    let c = c.expect("door.lk has an init line");
    println!("lock & key: {}", solve_lockkey(&lk, &c)?);
    let split = split_labels(&lk);
    println!("split labels: {} ({} vertices)", solve_lockkey(&split, &c)?, split.vertex_count());
    let p = lockkey_to_optional(&lk, &c)?;
    println!(
        "optional-grabbing game: {} vertices, {} pawns, {} gadgets",
        p.game.vertex_count(),
        p.game.pawn_count(),
        p.gadgets.len()
    );
    let a = to_always_grabbing(&p.game, &p.config)?;
    println!(
        "always-grabbing game: {} vertices, {} fresh, {} handed to Player 1",
        a.game.vertex_count(),
        a.fresh_vertices.len(),
        a.p1_fresh.len()
    );
    Ok(())
}
