//! Expected correctness when trustworthiness is random and how much is lost
//! by voting with its mean.

mod bounds;
mod distribution;
mod expectation;

pub use bounds::{
    extreme_upper_bound, hypercube_vertex_bound, soo_bound_strong, soo_bound_weak, Hypercube, SooBounds,
    VERTEX_LIMIT,
};
pub use distribution::{fit_beta_mean_var, Marginal, TrustworthinessDistribution};
pub use expectation::{
    correctness_at_mean, expected_correctness_fixed_trust, expected_correctness_fixed_truth,
    expected_correctness_revealed, soc_gap, soo, Budget, StabilityReport, StandardErrors, EXACT_SUPPORT_LIMIT, MEAN_TOLERANCE,
};
