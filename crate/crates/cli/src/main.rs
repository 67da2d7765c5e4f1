use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pawngame::check::{run_suite, SUITES};
use pawngame::eta::{minimum_grabs, EtaValue};
use pawngame::explicit::{expand, DEFAULT_BUDGET};
use pawngame::format::{canonical_order, parse_game, parse_tbgame, serialize_game, serialize_tbgame};
use pawngame::gen::{gen_atm_lockkey, gen_random_pawngame, gen_setcover, gen_tqbf, parse_atm, parse_qbf, RandomParams, SetCover};
use pawngame::grab_or_give::{reduce_grab_or_give, GogReduction};
use pawngame::lockkey::{lockkey_to_optional, parse_lockkey, serialize_lockkey, split_labels, tb_to_optional, to_always_grabbing, LockConfig};
use pawngame::{solve_game, Algo, Error, Mechanism, OwnershipKind, SolveOptions};

#[derive(Parser)]
#[command(name = "pawngame", version, about = "Solve, reduce and generate pawn games")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide the winner from the file's initial configuration.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algo: AlgoArg,
        /// Print strategy or play lines.
        #[arg(long)]
        witness: bool,
        /// Node budget for the explicit engine.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Minimum number of grabs per vertex (OVPP k-grabbing).
    Eta { file: PathBuf },
    /// Apply a reduction and print the resulting game.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        file: PathBuf,
        /// Start vertex id for `tb-to-optional`.
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Run a seeded agreement suite.
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Auto,
    Explicit,
    Specialized,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    /// Pawn game → configuration graph (tbgame).
    Expand,
    /// Grab-or-give pawn game → 4|V|-vertex turn-based game (tbgame).
    GrabOrGive,
    /// Lock & Key game → optional-grabbing pawn game.
    LockkeyToOptional,
    /// Optional-grabbing → always-grabbing pawn game.
    OptionalToAlways,
    /// Turn-based game (tbgame) → optional-grabbing pawn game.
    TbToOptional,
    /// Lock & Key game → one label per edge.
    SplitLabels,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ovpp,
    Mvpp,
    Omvpp,
}

#[derive(Subcommand)]
enum GenCmd {
    Setcover {
        #[arg(long)]
        universe: usize,
        /// Sets separated by `;`, elements by `,`.
        #[arg(long)]
        sets: String,
        #[arg(long)]
        k: usize,
    },
    Tqbf {
        #[arg(long)]
        formula: String,
    },
    Atm {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long, default_value = "")]
        word: String,
    },
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        pawns: usize,
        #[arg(long, value_enum, default_value = "ovpp")]
        kind: KindArg,
        /// optional-grabbing, always-grabbing, grab-or-give or k-grabbing:<k>
        #[arg(long, default_value = "optional-grabbing")]
        mechanism: String,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    /// A check suite found mismatches.
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } => 3,
                _ => 2,
            })
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Solve {
            file,
            algo,
            witness,
            budget,
            json,
        } => {
            let (g, c) = parse_game(&read(&file)?)?;
            let algo = match algo {
                AlgoArg::Auto => Algo::Auto,
                AlgoArg::Explicit => Algo::Explicit,
                AlgoArg::Specialized => Algo::Specialized,
            };
            let t = Instant::now();
            let rep = solve_game(&g, &c, SolveOptions { algo, budget, witness })?;
            let ms = t.elapsed().as_secs_f64() * 1000.0;
            if rep.fallback {
                eprintln!("fallback: explicit");
            }
            if json {
                let v = serde_json::json!({
                    "winner": rep.winner.number(),
                    "algo": rep.solver.to_string(),
                    "stats": { "states": rep.states, "time-ms": ms },
                });
                println!("{v}");
            } else {
                println!("winner: {}", rep.winner);
                println!("algo: {}", rep.solver);
                for l in &rep.witness {
                    println!("{l}");
                }
            }
        }
        Cmd::Eta { file } => {
            let (g, c) = parse_game(&read(&file)?)?;
            if g.classify() != OwnershipKind::Ovpp || !matches!(g.mechanism(), Mechanism::KGrabbing(_)) {
                return Err(Error::Precondition(format!(
                    "eta needs an OVPP k-grabbing game, got {} {}",
                    g.classify(),
                    g.mechanism()
                ))
                .into());
            }
            let eta = minimum_grabs(&g, &c.p1)?;
            for v in canonical_order(&g) {
                println!("eta {} {}", g.vertex_name(v), EtaValue(eta.get(v)));
            }
        }
        Cmd::Reduce {
            kind,
            file,
            start,
            budget,
        } => {
            let text = read(&file)?;
            let out = match kind {
                ReduceKind::Expand => {
                    let (g, c) = parse_game(&text)?;
                    let e = expand(&g, &c, budget)?;
                    serialize_tbgame(&e.tb, Some(e.start))
                }
                ReduceKind::GrabOrGive => {
                    let (g, c) = parse_game(&text)?;
                    let r = reduce_grab_or_give(&g)?;
                    serialize_tbgame(&r.tb, Some(GogReduction::main(c.vertex, g.mover(&c))))
                }
                ReduceKind::LockkeyToOptional => {
                    let (lk, c) = parse_lockkey(&text)?;
                    let c = c.unwrap_or_else(|| LockConfig::new(0, []));
                    let p = lockkey_to_optional(&lk, &c)?;
                    serialize_game(&p.game, &p.config)
                }
                ReduceKind::OptionalToAlways => {
                    let (g, c) = parse_game(&text)?;
                    let a = to_always_grabbing(&g, &c)?;
                    serialize_game(&a.game, &a.config)
                }
                ReduceKind::TbToOptional => {
                    let tb = parse_tbgame(&text)?;
                    let (g, c) = tb_to_optional(&tb, start)?;
                    serialize_game(&g, &c)
                }
                ReduceKind::SplitLabels => {
                    let (lk, c) = parse_lockkey(&text)?;
                    serialize_lockkey(&split_labels(&lk), c.as_ref())
                }
            };
            print!("{out}");
        }
        Cmd::Gen { what } => {
            let out = match what {
                GenCmd::Setcover { universe, sets, k } => {
                    let sc = SetCover::parse(universe, &sets, k)?;
                    let (g, c) = gen_setcover(&sc)?;
                    serialize_game(&g, &c)
                }
                GenCmd::Tqbf { formula } => {
                    let (g, c) = gen_tqbf(&parse_qbf(&formula)?)?;
                    serialize_game(&g, &c)
                }
                GenCmd::Atm { machine, word } => {
                    let atm = parse_atm(&read(&machine)?)?.with_word(&word)?;
                    let (lk, c) = gen_atm_lockkey(&atm)?;
                    serialize_lockkey(&lk, Some(&c))
                }
                GenCmd::Random {
                    seed,
                    vertices,
                    pawns,
                    kind,
                    mechanism,
                } => {
                    let toks: Vec<&str> = mechanism.split([':', ' ']).filter(|s| !s.is_empty()).collect();
                    let mech = pawngame::format::parse_mechanism(0, &toks)?;
                    let kind = match kind {
                        KindArg::Ovpp => OwnershipKind::Ovpp,
                        KindArg::Mvpp => OwnershipKind::Mvpp,
                        KindArg::Omvpp => OwnershipKind::Omvpp,
                    };
                    let (g, c) = gen_random_pawngame(&RandomParams::new(vertices, pawns, kind, mech), seed)?;
                    serialize_game(&g, &c)
                }
            };
            print!("{out}");
        }
        Cmd::Check { suite, seed, count } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Io(format!(
                    "unknown suite {suite:?}; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            let t = Instant::now();
            let rep = run_suite(&suite, seed, count)?;
            for m in &rep.mismatches {
                println!("MISMATCH case {}: {}", m.case, m.detail);
                println!("{}", m.instance.trim_end());
            }
            println!(
                "{} {}: {} cases, {} checks, {} mismatches, {:.2}s",
                if rep.passed() { "PASS" } else { "FAIL" },
                rep.suite,
                rep.cases,
                rep.checks,
                rep.mismatches.len(),
                t.elapsed().as_secs_f64()
            );
            if !rep.passed() {
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}
