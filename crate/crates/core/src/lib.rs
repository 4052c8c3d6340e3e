//! Tabulation and risk-limiting audits for ranked-ballot elections.
//!
//! Supports IRV, Ranked Pairs, Minimax, Smith-set variants and Kemeny-Young.
//! For each method the crate can generate a set of assertions whose truth
//! implies the reported winner, estimate the sample size an audit of those
//! assertions needs, and run the audit over a drawn sample.

pub mod assertions;
pub mod audit;
pub mod error;
pub mod io;
pub mod model;
pub mod parallel;
pub mod permutation;
pub mod tabulation;

pub use assertions::{Assertion, AssertionSet, Method};
pub use error::{Error, Result};
pub use model::{Ballot, CandidateId, Election, PairwiseTallies, ScoreMatrix};
