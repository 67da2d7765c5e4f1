//! The grab-or-give reduction: G1's graph becomes a 16-vertex turn-based game.

use pawngame::format::{parse_game, serialize_tbgame};
use pawngame::grab_or_give::{reduce_grab_or_give, solve_grab_or_give};
use pawngame::{Configuration, Mechanism, PawnSet};

fn main() -> pawngame::Result<()> {
    let (g, _) = parse_game(include_str!("../data/g1.pawn"))?;
    let g = g.with_mechanism(Mechanism::AlwaysGrabOrGive);
    let red = reduce_grab_or_give(&g)?;
    print!("{}", serialize_tbgame(&red.tb, None));
    for mask in 0..1u64 << g.pawn_count() {
        let c = Configuration::new(0, PawnSet::from_mask(mask));
        println!("from {:?}: {}", c.p1, solve_grab_or_give(&g, &c)?);
    }
    Ok(())
}
