//! Solves G1 from two starts with the auto dispatcher and the explicit engine.

use pawngame::format::parse_game;
use pawngame::{solve_game, Algo, Configuration, PawnSet, SolveOptions};

fn main() -> pawngame::Result<()> {
    let (g, c) = parse_game(include_str!("../data/g1.pawn"))?;
    let with_v0 = Configuration::new(c.vertex, PawnSet::from_iter([0]));
    for start in [&c, &with_v0] {
        let auto = solve_game(&g, start, SolveOptions { witness: true, ..Default::default() })?;
        let explicit = solve_game(&g, start, SolveOptions { algo: Algo::Explicit, ..Default::default() })?;
        println!(
            "{}: {} wins ({}), explicit agrees: {}",
            pawngame::solve::config_text(&g, start),
            auto.winner,
            auto.solver,
            auto.winner == explicit.winner
        );
        for l in &auto.witness {
            println!("  {l}");
        }
    }
    Ok(())
}
