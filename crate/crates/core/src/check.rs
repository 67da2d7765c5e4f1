//! Seeded agreement suites: each specialized solver or reduction against the
//! explicit oracle or a brute-force reference.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::eta::minimum_grabs;
use crate::explicit::{solve_all, solve_explicit};
use crate::format::{serialize_game, serialize_tbgame};
use crate::game::{Configuration, Mechanism, OwnershipKind, PawnGame, Player};
use crate::gen::random::{random_atm, random_pawn_set, random_pawngame, random_qbf, random_setcover, random_turnbased, rng};
use crate::gen::{atm_accepts_bruteforce, evaluate_qbf, gen_atm_lockkey, gen_setcover, gen_tqbf, has_cover, RandomParams, SetCover};
use crate::grab_or_give::solve_grab_or_give;
use crate::kgrab_dfs::{round_cap, solve_kgrab_dfs, solve_kgrab_dfs_with, SearchOptions};
use crate::lockkey::gadgets::check_gadget_behavior;
use crate::lockkey::{serialize_lockkey, solve_lockkey, tb_to_optional};
use crate::ovpp_optional::solve_ovpp_optional;
use crate::pawnset::PawnSet;
use crate::turnbased::solve_turnbased;

pub const SUITES: &[&str] = &[
    "alg1", "gog", "eta", "dfs", "lemma41", "gadgets", "monotonic", "setcover", "tqbf", "atm",
];

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub case: usize,
    pub detail: String,
    /// Serialized instance reproducing the mismatch.
    pub instance: String,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub suite: String,
    pub cases: usize,
    /// Individual comparisons made.
    pub checks: u64,
    pub mismatches: Vec<Mismatch>,
}

impl CheckReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            cases: 0,
            checks: 0,
            mismatches: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String, instance: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.mismatches.push(Mismatch {
                case: self.cases,
                detail: detail(),
                instance: instance(),
            });
        }
    }
}

/// Runs suite `name` on `count` instances drawn from `seed`.
pub fn run_suite(name: &str, seed: u64, count: usize) -> Result<CheckReport> {
    let mut r = rng(seed);
    let mut rep = CheckReport::new(name);
    let run: fn(&mut CheckReport, &mut ChaCha8Rng) -> Result<()> = match name {
        "alg1" => case_alg1,
        "gog" => case_gog,
        "eta" => case_eta,
        "dfs" => case_dfs,
        "lemma41" => case_lemma41,
        "gadgets" => return check_gadgets(rep),
        "monotonic" => case_monotonic,
        "setcover" => {
            fixed_setcover(&mut rep)?;
            case_setcover
        }
        "tqbf" => case_tqbf,
        "atm" => case_atm,
        other => {
            return Err(Error::Invalid(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    for _ in 0..count {
        run(&mut rep, &mut r)?;
        rep.cases += 1;
    }
    Ok(rep)
}

fn random_game(r: &mut ChaCha8Rng, n: usize, d: usize, kind: OwnershipKind, m: Mechanism) -> Result<(PawnGame, Configuration)> {
    random_pawngame(&RandomParams::new(n, d, kind, m), r)
}

fn case_alg1(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let n = r.gen_range(1..=7);
    let (g, c0) = random_game(r, n, n, OwnershipKind::Ovpp, Mechanism::OptionalGrabbing)?;
    let oracle = solve_all(&g)?;
    let mut configs = vec![c0];
    while configs.len() < 4 {
        let v = r.gen_range(0..n);
        configs.push(Configuration::new(v, random_pawn_set(n, r)));
    }
    for c in configs {
        let got = solve_ovpp_optional(&g, &c)?.winner;
        let want = oracle.winner(&c);
        rep.expect(
            got == want,
            || format!("alg1 says Player {got}, oracle says Player {want}"),
            || serialize_game(&g, &c),
        );
    }
    Ok(())
}

fn case_gog(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let n = r.gen_range(1..=6);
    let d = r.gen_range(1..=6);
    let (g, _) = random_game(r, n, d, OwnershipKind::Mvpp, Mechanism::AlwaysGrabOrGive)?;
    let oracle = solve_all(&g)?;
    for v in 0..n {
        // Winner per controller of v, to check it ignores the rest of P.
        let mut seen: [Option<Player>; 2] = [None, None];
        for mask in 0..1u64 << d {
            let c = Configuration::new(v, PawnSet::from_mask(mask));
            let want = oracle.winner(&c);
            let got = solve_grab_or_give(&g, &c)?;
            rep.expect(
                got == want,
                || format!("reduction says Player {got}, oracle says Player {want}"),
                || serialize_game(&g, &c),
            );
            let slot = &mut seen[(g.mover(&c) == Player::Two) as usize];
            let prev = *slot.get_or_insert(want);
            rep.expect(
                prev == want,
                || format!("winner at {} depends on more than the mover", g.vertex_name(v)),
                || serialize_game(&g, &c),
            );
        }
    }
    Ok(())
}

fn case_eta(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let n = r.gen_range(1..=6);
    let (g, c0) = random_game(r, n, n, OwnershipKind::Ovpp, Mechanism::KGrabbing(n))?;
    let eta = minimum_grabs(&g, &c0.p1)?;
    for k in 0..=n {
        let gk = g.with_mechanism(Mechanism::KGrabbing(k));
        let oracle = solve_all(&gk)?;
        for v in 0..n {
            let c = Configuration::with_grabs(v, c0.p1.clone(), k);
            let want = oracle.wins(&c);
            rep.expect(
                eta.wins(v, k) == want,
                || {
                    format!(
                        "eta({}) = {}, k = {k}, oracle win = {want}",
                        g.vertex_name(v),
                        crate::eta::EtaValue(eta.get(v))
                    )
                },
                || serialize_game(&gk, &c),
            );
        }
    }
    Ok(())
}

fn case_dfs(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let n = r.gen_range(1..=5);
    let d = r.gen_range(2..=5);
    let k = r.gen_range(0..=3);
    let (g, c0) = random_game(r, n, d, OwnershipKind::Omvpp, Mechanism::KGrabbing(k))?;
    let oracle = solve_all(&g)?;
    let cap = round_cap(&g, k);
    let mut configs = vec![c0];
    for _ in 0..3 {
        configs.push(Configuration::with_grabs(r.gen_range(0..n), random_pawn_set(d, r), r.gen_range(0..=k)));
    }
    for c in configs {
        let out = solve_kgrab_dfs(&g, &c)?;
        let want = oracle.winner(&c);
        rep.expect(
            out.winner == want,
            || format!("dfs says Player {}, oracle says Player {want}", out.winner),
            || serialize_game(&g, &c),
        );
        if let Some(w) = &out.witness {
            let v = w.validate(&g, cap);
            rep.expect(v.is_ok(), || format!("bad witness: {}", v.unwrap_err()), || serialize_game(&g, &c));
        }
        let deeper = solve_kgrab_dfs_with(
            &g,
            &c,
            SearchOptions {
                extra_rounds: cap,
                ..SearchOptions::default()
            },
        )?;
        rep.expect(
            deeper.winner == out.winner,
            || "doubling the round cap flipped the answer".to_string(),
            || serialize_game(&g, &c),
        );
    }
    Ok(())
}

fn case_lemma41(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let n = r.gen_range(1..=8);
    let (tb, v0) = random_turnbased(n, r);
    let want = solve_turnbased(&tb).winner(v0);
    let (g, c) = tb_to_optional(&tb, v0)?;
    let got = solve_explicit(&g, &c)?.winner;
    rep.expect(
        got == want,
        || format!("turn-based winner Player {want}, pawn game winner Player {got}"),
        || serialize_tbgame(&tb, Some(v0)),
    );
    Ok(())
}

fn check_gadgets(mut rep: CheckReport) -> Result<CheckReport> {
    for l in check_gadget_behavior()? {
        rep.expect(l.passed, || format!("gadget check failed: {}", l.name), || l.name.clone());
        rep.cases += 1;
    }
    Ok(rep)
}

fn case_monotonic(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let n = r.gen_range(1..=6);
    let d = r.gen_range(1..=8);
    let (g, _) = random_game(r, n, d, OwnershipKind::Mvpp, Mechanism::OptionalGrabbing)?;
    for mech in [Mechanism::OptionalGrabbing, Mechanism::AlwaysGrabbing] {
        let gm = g.with_mechanism(mech);
        let oracle = solve_all(&gm)?;
        for v in 0..n {
            let j = g.sole_owner(v).expect("MVPP vertex has one owner");
            let wins: Vec<bool> = (0..1u64 << d)
                .map(|m| oracle.wins(&Configuration::new(v, PawnSet::from_mask(m))))
                .collect();
            for p in 0..1u64 << d {
                if !wins[p as usize] {
                    continue;
                }
                // Every P′ ⊆ P that keeps j whenever P has it.
                let mut sub = p;
                loop {
                    if p & (1 << j) == 0 || sub & (1 << j) != 0 {
                        rep.expect(
                            wins[sub as usize],
                            || format!("{mech}: Player 1 wins with P={p:#b} but not P'={sub:#b}"),
                            || serialize_game(&gm, &Configuration::new(v, PawnSet::from_mask(sub))),
                        );
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & p;
                }
            }
        }
    }
    // k-grabbing: more pawns never hurt Player 1, on MVPP and OMVPP.
    let k = r.gen_range(0..=2);
    let kind = if d >= 2 && r.gen_bool(0.5) {
        OwnershipKind::Omvpp
    } else {
        OwnershipKind::Mvpp
    };
    let (gk, _) = random_game(r, n, d, kind, Mechanism::KGrabbing(k))?;
    let oracle = solve_all(&gk)?;
    for v in 0..n {
        for grabs in 0..=k {
            let wins: Vec<bool> = (0..1u64 << d)
                .map(|m| oracle.wins(&Configuration::with_grabs(v, PawnSet::from_mask(m), grabs)))
                .collect();
            let full = (1u64 << d) - 1;
            for p in 0..1u64 << d {
                if !wins[p as usize] {
                    continue;
                }
                let rest = full & !p;
                let mut add = rest;
                loop {
                    let sup = p | add;
                    rep.expect(
                        wins[sup as usize],
                        || format!("k-grabbing: Player 1 wins with P={p:#b} but not with superset {sup:#b}"),
                        || serialize_game(&gk, &Configuration::with_grabs(v, PawnSet::from_mask(sup), grabs)),
                    );
                    if add == 0 {
                        break;
                    }
                    add = (add - 1) & rest;
                }
            }
        }
    }
    Ok(())
}

fn setcover_case(rep: &mut CheckReport, sc: &SetCover) -> Result<()> {
    let want = has_cover(sc);
    let (g, c) = gen_setcover(sc)?;
    let dfs = solve_kgrab_dfs(&g, &c)?.winner == Player::One;
    let oracle = solve_explicit(&g, &c)?.winner == Player::One;
    rep.expect(
        dfs == want && oracle == want,
        || format!("cover exists = {want}, dfs win = {dfs}, oracle win = {oracle}"),
        || format!("# gen setcover {sc}\n{}", serialize_game(&g, &c)),
    );
    Ok(())
}

fn fixed_setcover(rep: &mut CheckReport) -> Result<()> {
    for k in [2, 1] {
        setcover_case(rep, &SetCover::parse(3, "1;1,2;2,3", k)?)?;
    }
    Ok(())
}

fn case_setcover(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let sc = random_setcover(5, 5, r);
    setcover_case(rep, &sc)
}

fn case_tqbf(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let q = random_qbf(4, 4, r);
    let want = evaluate_qbf(&q);
    let (g, c) = gen_tqbf(&q)?;
    let dfs = solve_kgrab_dfs(&g, &c)?.winner == Player::One;
    let oracle = solve_explicit(&g, &c)?.winner == Player::One;
    rep.expect(
        dfs == want && oracle == want,
        || format!("formula true = {want}, dfs win = {dfs}, oracle win = {oracle}"),
        || format!("# gen tqbf --formula \"{q}\"\n{}", serialize_game(&g, &c)),
    );
    Ok(())
}

fn case_atm(rep: &mut CheckReport, r: &mut ChaCha8Rng) -> Result<()> {
    let atm = random_atm(3, 2, 2, r);
    let want = atm_accepts_bruteforce(&atm)?;
    let (lk, c) = gen_atm_lockkey(&atm)?;
    let got = solve_lockkey(&lk, &c)? == Player::One;
    rep.expect(
        got == want,
        || format!("machine accepts = {want}, Lock & Key win = {got}"),
        || format!("{atm}\n{}", serialize_lockkey(&lk, Some(&c))),
    );
    Ok(())
}
