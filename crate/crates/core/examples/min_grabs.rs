//! Minimum grab counts on an OVPP k-grabbing game, checked against the DFS.

use pawngame::eta::{minimum_grabs, EtaValue};
use pawngame::format::parse_game;
use pawngame::kgrab_dfs::solve_kgrab_dfs;
use pawngame::Configuration;

fn main() -> pawngame::Result<()> {
    let (g, c) = parse_game(include_str!("../data/g1_k.pawn"))?;
    let eta = minimum_grabs(&g, &c.p1)?;
    for v in 0..g.vertex_count() {
        let dfs = solve_kgrab_dfs(&g, &Configuration::with_grabs(v, c.p1.clone(), 1))?;
        println!("{:>3}  eta {:>3}  one grab: {}", g.vertex_name(v), EtaValue(eta.get(v)).to_string(), dfs.winner);
    }
    Ok(())
}
