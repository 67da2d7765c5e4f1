//! Instance generators: hardness constructions with brute-force checkers
//! for their source problems, and seeded random games.

pub mod atm;
pub mod random;
pub mod setcover;
pub mod tqbf;

pub use atm::{atm_accepts_bruteforce, gen_atm_lockkey, parse_atm, AtmSpec};
pub use random::{gen_random_pawngame, RandomParams};
pub use setcover::{gen_setcover, has_cover, SetCover};
pub use tqbf::{evaluate_qbf, gen_tqbf, parse_qbf, QbfSpec, Quantifier};
