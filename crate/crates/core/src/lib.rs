//! Pawn games: reachability games on graphs where vertices are owned by
//! pawns and control of pawns changes hands during play.

pub mod check;
pub mod error;
pub mod eta;
pub mod explicit;
pub mod format;
pub mod game;
pub mod gen;
pub mod grab_or_give;
pub mod kgrab_dfs;
pub mod lockkey;
pub mod ovpp_optional;
pub mod pawnset;
pub mod solve;
pub mod turnbased;

pub use error::{Error, Result};
pub use game::{Configuration, GameBuilder, GameSpec, Mechanism, OwnershipKind, PawnGame, Player};
pub use pawnset::PawnSet;
pub use solve::{solve_game, Algo, SolveOptions, SolveReport, Solver};
