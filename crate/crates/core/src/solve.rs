//! Solver dispatch by ownership class and mechanism.

use std::fmt;

use crate::error::{Error, Result};
use crate::eta::minimum_grabs;
use crate::explicit::{solve_explicit_with, ExplicitOptions, Node, DEFAULT_BUDGET};
use crate::game::{Configuration, Mechanism, OwnershipKind, PawnGame, Player};
use crate::grab_or_give::solve_grab_or_give;
use crate::kgrab_dfs::{solve_kgrab_dfs, PlayStep};
use crate::ovpp_optional::solve_ovpp_optional;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algo {
    #[default]
    Auto,
    Explicit,
    Specialized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    OvppOptional,
    GrabOrGive,
    KgrabEta,
    KgrabDfs,
    Explicit,
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::OvppOptional => "ovpp-optional",
            Solver::GrabOrGive => "grab-or-give",
            Solver::KgrabEta => "kgrab-eta",
            Solver::KgrabDfs => "kgrab-dfs",
            Solver::Explicit => "explicit",
        })
    }
}

/// The polynomial or bounded-search solver for this class, if there is one.
pub fn specialized_solver(g: &PawnGame) -> Option<Solver> {
    match (g.classify(), g.mechanism()) {
        (OwnershipKind::Ovpp, Mechanism::OptionalGrabbing) => Some(Solver::OvppOptional),
        (OwnershipKind::Ovpp | OwnershipKind::Mvpp, Mechanism::AlwaysGrabOrGive) => Some(Solver::GrabOrGive),
        (OwnershipKind::Ovpp, Mechanism::KGrabbing(_)) => Some(Solver::KgrabEta),
        (_, Mechanism::KGrabbing(_)) => Some(Solver::KgrabDfs),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub algo: Algo,
    pub budget: u64,
    pub witness: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            algo: Algo::Auto,
            budget: DEFAULT_BUDGET,
            witness: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub winner: Player,
    pub solver: Solver,
    /// Auto mode found no specialized solver.
    pub fallback: bool,
    /// Size of the structure the solver worked on.
    pub states: u64,
    pub witness: Vec<String>,
}

pub fn solve_game(g: &PawnGame, c: &Configuration, opts: SolveOptions) -> Result<SolveReport> {
    g.check_config(c)?;
    let spec = specialized_solver(g);
    let (solver, fallback) = match (opts.algo, spec) {
        (Algo::Explicit, _) => (Solver::Explicit, false),
        (_, Some(s)) => (s, false),
        (Algo::Auto, None) => (Solver::Explicit, true),
        (Algo::Specialized, None) => {
            let why = match g.mechanism() {
                Mechanism::OptionalGrabbing | Mechanism::AlwaysGrabbing => {
                    " (the class is EXPTIME-complete)"
                }
                _ => "",
            };
            return Err(Error::Precondition(format!(
                "no specialized solver for {} {} games{why}; use --algo explicit",
                g.classify(),
                g.mechanism()
            )));
        }
    };
    let mut witness = Vec::new();
    let (winner, states) = match solver {
        Solver::OvppOptional => {
            let out = solve_ovpp_optional(g, c)?;
            if opts.witness {
                witness = alg1_lines(g, &out);
            }
            (out.winner, g.vertex_count() as u64)
        }
        Solver::GrabOrGive => (solve_grab_or_give(g, c)?, 4 * g.vertex_count() as u64),
        Solver::KgrabEta => {
            let eta = minimum_grabs(g, &c.p1)?;
            let r = c.grabs_left.unwrap_or(0);
            let w = if eta.wins(c.vertex, r) {
                Player::One
            } else {
                Player::Two
            };
            if opts.witness {
                witness.push(format!(
                    "eta {} {}",
                    g.vertex_name(c.vertex),
                    crate::eta::EtaValue(eta.get(c.vertex))
                ));
            }
            (w, g.vertex_count() as u64)
        }
        Solver::KgrabDfs => {
            let out = solve_kgrab_dfs(g, c)?;
            if opts.witness {
                if let Some(w) = &out.witness {
                    witness = w
                        .principal_play()
                        .into_iter()
                        .map(|s| match s {
                            PlayStep::Move(v) => format!("move {}", g.vertex_name(v)),
                            PlayStep::Grab(p) => format!("grab {p}"),
                            PlayStep::NoGrab => "nograb".to_string(),
                        })
                        .collect();
                }
            }
            (out.winner, out.nodes)
        }
        Solver::Explicit => {
            let out = solve_explicit_with(
                g,
                c,
                ExplicitOptions {
                    budget: opts.budget,
                    ..ExplicitOptions::default()
                },
            )?;
            if opts.witness {
                let play = out.solution.play_out(c, 4 * g.vertex_count() * (g.pawn_count() + 1), |_, s| s[0].clone());
                witness = play.iter().map(|n| format!("play {}", node_text(g, n))).collect();
            }
            (out.winner, out.solution.states())
        }
    };
    Ok(SolveReport {
        winner,
        solver,
        fallback,
        states,
        witness,
    })
}

pub fn config_text(g: &PawnGame, c: &Configuration) -> String {
    let p: Vec<String> = c.p1.iter().map(|p| p.to_string()).collect();
    match c.grabs_left {
        Some(r) => format!("<{}, {{{}}}, {r}>", g.vertex_name(c.vertex), p.join(",")),
        None => format!("<{}, {{{}}}>", g.vertex_name(c.vertex), p.join(",")),
    }
}

pub fn node_text(g: &PawnGame, n: &Node) -> String {
    match n {
        Node::Config(c) => config_text(g, c),
        Node::Inter { to, from } => format!("{} -> {} (grab pending)", config_text(g, from), g.vertex_name(*to)),
    }
}

fn alg1_lines(g: &PawnGame, out: &crate::ovpp_optional::Alg1Outcome) -> Vec<String> {
    let names = |vs: &[usize]| vs.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(",");
    let mut lines = Vec::new();
    for (i, s) in out.trace.iter().enumerate() {
        let mut l = format!("pass {i}: W={{{}}}", names(&s.w));
        if let Some(b) = &s.border {
            l.push_str(&format!(" B={{{}}}", names(b)));
        }
        if let Some(b) = &s.border_closed {
            l.push_str(&format!(" R={{{}}}", names(b)));
        }
        if let Some(t) = &s.trap {
            l.push_str(&format!(" trap={{{}}}", names(t)));
        }
        lines.push(l);
    }
    for (v, a) in out.added.iter().enumerate() {
        if let Some((lvl, rule)) = a {
            let rule = format!("{rule:?}").to_lowercase();
            lines.push(format!("added {} level {lvl} rule {rule}", g.vertex_name(v)));
        }
    }
    lines
}
