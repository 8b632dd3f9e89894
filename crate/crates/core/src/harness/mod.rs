//! The instance-testing harness: seeded random games, impoverishment
//! pairs, theorem desk checks with reproduction bundles, counterexample
//! search, and the JSON game-file format.

pub mod gen;
pub mod io;
pub mod report;
pub mod search;
pub mod theorems;

use thiserror::Error;

pub use gen::{impoverish, random_game, random_payoff_vector, random_rational, GenConfig};
pub use io::{game_from_json, game_from_str, game_to_json, game_to_string, read_game, write_game};
pub use search::{counterexample_search, SearchOutcome, ViolationRecord};
pub use theorems::{
    check_theorem1, check_theorem2, check_theorem3, lemma31_replay, planted_solution, ClaimResult,
    ReplayOutcome, ReplayViolation, TheoremCheckResult,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Format(String),
    #[error("point is not in the core of the game")]
    NotInCore,
    #[error(transparent)]
    Game(#[from] crate::game::GameError),
    #[error(transparent)]
    Rational(#[from] crate::rational::ParseRationalError),
    #[error(transparent)]
    Axiom(#[from] crate::axioms::AxiomError),
    #[error(transparent)]
    Reduction(#[from] crate::reductions::ReductionError),
    #[error(transparent)]
    Region(#[from] crate::region::RegionError),
}
