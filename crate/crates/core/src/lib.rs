//! Cost of stability for cooperative games: exact rational solvers, an FPTAS
//! for weighted voting games, stability checks and instance generators.

pub mod approx;
pub mod cli;
pub mod cos;
pub mod error;
pub mod format;
pub mod game;
pub mod generators;
pub mod lp;
pub mod par;
pub mod rational;
pub mod stability;

pub use error::{Error, Result};
pub use game::{
    Coalition, CoalitionStructure, CoalitionalGame, Game, SuperImputation, TabularGame, WeightedVotingGame,
};
pub use par::ExecutionMode;
pub use rational::Rational;
