//! Exact and Monte Carlo analysis of weighted majority voting when the
//! weights come from trust estimates that differ from the sources' true
//! trustworthiness.
//!
//! Everything works in realization space: a realization records which
//! sources reported the correct option, and the decision set of a trust
//! vector is the set of realizations on which weighted majority voting
//! with log-odds weights decides correctly.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correctness;
pub mod decision;
pub mod error;
pub mod montecarlo;
pub mod probability;
pub mod realization;
pub mod sensitivity;
pub mod stability;
pub mod summation;
pub mod weights;

pub use correctness::{correctness, revealed_correctness, simulate_correctness};
pub use decision::{build_decision_set, decides_correctly, DecisionSet, DEFAULT_ENUMERATION_LIMIT};
pub use error::{Result, WmvError};
pub use montecarlo::{Estimate, EstimateMode};
pub use probability::{ProbabilityVector, Role};
pub use realization::{realization_probability, Realization};
pub use weights::{compute_weights, WeightVector};
