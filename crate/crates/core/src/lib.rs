//! Exact-arithmetic toolkit for NTU cooperative games in finitely-generated
//! form.
//!
//! Payoff sets are downward hulls of finite generator sets over exact
//! rationals. On top of that representation the crate computes cores,
//! Pareto and individually-rational sets as exact unions of axis-aligned
//! boxes, builds reduced and perturbed games, and decides a family of
//! solution axioms at instance level with concrete witnesses on violation.

pub mod axioms;
pub mod cli;
pub mod game;
pub mod harness;
pub mod predicates;
pub mod rational;
pub mod reductions;
pub mod region;

#[cfg(test)]
pub(crate) mod testutil;

pub use game::{Coalition, GameError, GeneratorSet, NTUGame, PayoffVector, PlayerId};
pub use rational::{Extended, Rational};
pub use region::Region;
