//! SET-COVER and TQBF instances as k-grabbing games, plus an ATM as a Lock & Key game.

use pawngame::gen::{
    atm_accepts_bruteforce, evaluate_qbf, gen_atm_lockkey, gen_setcover, gen_tqbf, has_cover, parse_atm, parse_qbf,
    SetCover,
};
use pawngame::kgrab_dfs::solve_kgrab_dfs;
use pawngame::lockkey::solve_lockkey;

fn main() -> pawngame::Result<()> {
    for k in [1, 2] {
        let sc = SetCover::parse(3, "1;1,2;2,3", k)?;
        let (g, c) = gen_setcover(&sc)?;
        println!("set cover k={k}: cover {} / game {}", has_cover(&sc), solve_kgrab_dfs(&g, &c)?.winner);
    }
    for f in ["Ex1.Ax2.(x1|~x2)&(x2)", "Ax1.Ex2.(x1|x2)&(~x1|~x2)"] {
        let q = parse_qbf(f)?;
        let (g, c) = gen_tqbf(&q)?;
        println!("{q}: true {} / game {}", evaluate_qbf(&q), solve_kgrab_dfs(&g, &c)?.winner);
    }
    let atm = parse_atm(include_str!("../data/flip.atm"))?;
    for w in ["aa", "ab"] {
        let m = atm.clone().with_word(w)?;
        let (lk, c) = gen_atm_lockkey(&m)?;
        println!("atm on {w}: accepts {} / game {}", atm_accepts_bruteforce(&m)?, solve_lockkey(&lk, &c)?);
    }
    Ok(())
}
