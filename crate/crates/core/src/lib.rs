//! Monotone Boolean functions of `n` variables.
//!
//! The crate is built around the precedence matrix `P_n` of the Boolean
//! cube: its rows are the truth tables of the negation-free conjunctions and
//! its negated columns those of the negation-free clauses. On top of it sit
//! a lexicographic generator of all monotone functions ([`generator`]),
//! binary searches for extremal vectors ([`search`]) and an exact learner
//! that identifies an unknown monotone function from membership queries
//! alone ([`identify`]).

pub mod boolcube;
pub mod cli;
pub mod error;
pub mod generator;
pub mod identify;
pub mod knowledge;
pub mod oracle;
pub mod search;

pub use boolcube::{Dimension, MonotoneTable, TruthTable, VecIndex};
pub use error::{MbfError, Result};
