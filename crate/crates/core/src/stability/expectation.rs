use serde::{Deserialize, Serialize};

use super::bounds::SooBounds;
use super::distribution::TrustworthinessDistribution;
use crate::correctness::{correctness, revealed_correctness};
use crate::decision::DecisionSet;
use crate::error::{Result, WmvError};
use crate::montecarlo::{replicate_map, Estimate, EstimateMode};
use crate::probability::{ProbabilityVector, Role};
use crate::summation::sum_descending;

/// Largest joint support enumerated in exact mode.
pub const EXACT_SUPPORT_LIMIT: u128 = 4096;

/// Declared means must match the trust vector within this tolerance.
pub const MEAN_TOLERANCE: f64 = 1e-12;

/// How to evaluate expectations over trustworthiness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Budget {
    Exact,
    MonteCarlo { runs: u64, seed: u64 },
}

impl Budget {
    /// Exact when the distribution is discrete with a small support,
    /// otherwise Monte Carlo with the given runs and seed.
    pub fn auto(dist: &TrustworthinessDistribution, runs: u64, seed: u64) -> Self {
        match dist.support_size() {
            Some(s) if s <= EXACT_SUPPORT_LIMIT => Budget::Exact,
            _ => Budget::MonteCarlo { runs, seed },
        }
    }
}

fn check_trust(trust: &ProbabilityVector, dist: &TrustworthinessDistribution) -> Result<()> {
    if trust.role() != Role::Trust {
        return Err(WmvError::InvalidArgument("expected a trust vector".into()));
    }
    if dist.len() != trust.len() {
        return Err(WmvError::LengthMismatch {
            field: "distribution",
            expected: trust.len(),
            found: dist.len(),
        });
    }
    Ok(())
}

fn check_means(trust: &ProbabilityVector, dist: &TrustworthinessDistribution) -> Result<()> {
    for (index, (mean, &t)) in dist.means().into_iter().zip(trust.values()).enumerate() {
        if (mean - t).abs() > MEAN_TOLERANCE {
            return Err(WmvError::MeanMismatch { index, mean, trust: t });
        }
    }
    Ok(())
}

fn check_runs(runs: u64) -> Result<()> {
    if runs == 0 {
        return Err(WmvError::InvalidArgument("runs must be at least 1".into()));
    }
    Ok(())
}

/// E over `dist` of `f(sample)`, exactly or by sampling.
fn expect<F>(dist: &TrustworthinessDistribution, budget: Budget, f: F) -> Result<Estimate>
where
    F: Fn(&[f64]) -> Result<f64> + Sync + Send,
{
    match budget {
        Budget::Exact => {
            let mut terms = Vec::new();
            for (point, prob) in dist.joint_support(EXACT_SUPPORT_LIMIT)? {
                terms.push(prob * f(&point)?);
            }
            Ok(Estimate::exact(sum_descending(&mut terms).clamp(0.0, 1.0)))
        }
        Budget::MonteCarlo { runs, seed } => {
            check_runs(runs)?;
            let values = replicate_map(runs, seed, |rng, _| f(&dist.sample(rng)));
            let values = values.into_iter().collect::<Result<Vec<f64>>>()?;
            Ok(Estimate::from_samples(&values))
        }
    }
}

/// E(ω(p̂, P)): trust fixed, trustworthiness drawn from `dist`.
pub fn expected_correctness_fixed_trust(
    trust: &ProbabilityVector,
    dist: &TrustworthinessDistribution,
    budget: Budget,
) -> Result<Estimate> {
    check_trust(trust, dist)?;
    let set = DecisionSet::build(trust)?;
    expect(dist, budget, |p| Ok(set.mass(p)))
}

/// ω(p̂, E(P)). Correctness is affine in each source's trustworthiness, so
/// for independent sources this equals [`expected_correctness_fixed_trust`].
pub fn correctness_at_mean(trust: &ProbabilityVector, dist: &TrustworthinessDistribution) -> Result<f64> {
    check_trust(trust, dist)?;
    correctness(trust, &ProbabilityVector::trustworthiness(dist.means())?)
}

/// E(ω(P)): the decision maker learns each realized trustworthiness.
pub fn expected_correctness_revealed(dist: &TrustworthinessDistribution, budget: Budget) -> Result<Estimate> {
    expect(dist, budget, revealed_correctness)
}

/// E(ω(P̂, p)): trustworthiness fixed, trust drawn from `trust_dist`.
/// Draws below one half are raised to one half before computing weights.
pub fn expected_correctness_fixed_truth(
    truth: &ProbabilityVector,
    trust_dist: &TrustworthinessDistribution,
    budget: Budget,
) -> Result<Estimate> {
    if trust_dist.len() != truth.len() {
        return Err(WmvError::LengthMismatch {
            field: "distribution",
            expected: truth.len(),
            found: trust_dist.len(),
        });
    }
    let p = truth.values();
    expect(trust_dist, budget, |q| {
        Ok(DecisionSet::build(&ProbabilityVector::clamped_trust(q)?)?.mass(p))
    })
}

/// Stability of correctness: E(ω(p̂, P)) − ω(p̂). Zero up to estimation
/// error whenever E(P) = p̂.
pub fn soc_gap(trust: &ProbabilityVector, dist: &TrustworthinessDistribution, budget: Budget) -> Result<Estimate> {
    check_trust(trust, dist)?;
    check_means(trust, dist)?;
    let omega = correctness(trust, &trust.with_role(Role::Trustworthiness)?)?;
    Ok(expected_correctness_fixed_trust(trust, dist, budget)?.offset(-omega))
}

/// Standard errors of the estimates in a [`StabilityReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardErrors {
    pub e_omega_mixed: f64,
    pub e_omega_revealed: f64,
    pub soc_gap: f64,
    pub soo: f64,
}

/// Everything computed by [`soo`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// ω(p̂).
    pub omega_trust: f64,
    /// E(ω(p̂, P)).
    pub e_omega_mixed: f64,
    /// E(ω(P)).
    pub e_omega_revealed: f64,
    /// E(ω(p̂, P)) − ω(p̂).
    pub soc_gap: f64,
    /// Stability of optimality: E(ω(P)) − ω(p̂).
    pub soo: f64,
    /// Present when every marginal has bounded support within δᵢ ≤ 1 − p̂ᵢ.
    pub bound_strong: Option<f64>,
    pub bound_weak: Option<f64>,
    /// Support half-widths the bounds were computed from.
    pub deltas: Option<Vec<f64>>,
    pub mode: EstimateMode,
    pub runs: u64,
    pub standard_errors: StandardErrors,
}

/// Stability of optimality with its bounds. In Monte Carlo mode both
/// expectations use the same draws.
pub fn soo(trust: &ProbabilityVector, dist: &TrustworthinessDistribution, budget: Budget) -> Result<StabilityReport> {
    check_trust(trust, dist)?;
    check_means(trust, dist)?;
    let omega_trust = correctness(trust, &trust.with_role(Role::Trustworthiness)?)?;
    let set = DecisionSet::build(trust)?;

    let (mixed, revealed) = match budget {
        Budget::Exact => (
            expect(dist, budget, |p| Ok(set.mass(p)))?,
            expect(dist, budget, revealed_correctness)?,
        ),
        Budget::MonteCarlo { runs, seed } => {
            check_runs(runs)?;
            let pairs = replicate_map(runs, seed, |rng, _| {
                let p = dist.sample(rng);
                Ok((set.mass(&p), revealed_correctness(&p)?))
            })
            .into_iter()
            .collect::<Result<Vec<(f64, f64)>>>()?;
            let mixed: Vec<f64> = pairs.iter().map(|x| x.0).collect();
            let revealed: Vec<f64> = pairs.iter().map(|x| x.1).collect();
            (Estimate::from_samples(&mixed), Estimate::from_samples(&revealed))
        }
    };

    let deltas = dist.half_widths(trust.values()).and_then(|deltas| {
        let fits = deltas
            .iter()
            .zip(trust.values())
            .all(|(&d, &p)| d <= 1.0 - p + 1e-12);
        fits.then(|| {
            deltas
                .iter()
                .zip(trust.values())
                .map(|(&d, &p)| d.min(1.0 - p))
                .collect::<Vec<f64>>()
        })
    });
    let bounds = deltas
        .as_deref()
        .map(|d| SooBounds::from_omega(omega_trust, trust.values(), d));

    Ok(StabilityReport {
        omega_trust,
        e_omega_mixed: mixed.value,
        e_omega_revealed: revealed.value,
        soc_gap: mixed.value - omega_trust,
        soo: revealed.value - omega_trust,
        bound_strong: bounds.as_ref().map(|b| b.strong),
        bound_weak: bounds.as_ref().map(|b| b.weak),
        deltas,
        mode: mixed.mode,
        runs: mixed.runs(),
        standard_errors: StandardErrors {
            e_omega_mixed: mixed.stderr,
            e_omega_revealed: revealed.stderr,
            soc_gap: mixed.stderr,
            soo: revealed.stderr,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::distribution::Marginal;

    const RUNNING: [f64; 4] = [0.8, 0.75, 0.7, 0.6];

    fn trust(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::trust(v.to_vec()).unwrap()
    }

    fn extreme(means: &[f64], delta: f64) -> TrustworthinessDistribution {
        TrustworthinessDistribution::from_means(means, |m| Marginal::extreme_symmetric(m, delta)).unwrap()
    }

    #[test]
    fn mixed_expectation_of_identical_trio() {
        let d = extreme(&[0.7; 3], 0.1);
        let e = expected_correctness_fixed_trust(&trust(&[0.7; 3]), &d, Budget::Exact).unwrap();
        assert!((e.value - 0.784).abs() < 1e-12);
        assert!(e.is_exact());
    }

    #[test]
    fn revealed_single_source() {
        let d = extreme(&[0.7], 0.1);
        let e = expected_correctness_revealed(&d, Budget::Exact).unwrap();
        assert!((e.value - 0.7).abs() < 1e-15);
    }

    #[test]
    fn running_example_soo() {
        let report = soo(&trust(&RUNNING), &extreme(&RUNNING, 0.05), Budget::Exact).unwrap();
        assert!((report.omega_trust - 0.845).abs() < 1e-12);
        assert!(report.soc_gap.abs() < 1e-12);
        assert!((report.e_omega_revealed - 0.8514453125).abs() < 1e-12);
        assert!((report.soo - 0.0064453125).abs() < 1e-12);
        assert_eq!(report.standard_errors.soo, 0.0);
        let (strong, weak) = (report.bound_strong.unwrap(), report.bound_weak.unwrap());
        assert!(report.soo <= strong && strong <= weak);
    }

    #[test]
    fn beta_has_no_bounds_and_mc_soc_is_small() {
        let d = TrustworthinessDistribution::from_means(&RUNNING, |m| Marginal::beta(m, 0.005)).unwrap();
        let report = soo(&trust(&RUNNING), &d, Budget::MonteCarlo { runs: 20_000, seed: 5 }).unwrap();
        assert!(report.bound_strong.is_none() && report.bound_weak.is_none());
        assert_eq!(report.runs, 20_000);
        assert!(report.soc_gap.abs() <= 4.0 * report.standard_errors.soc_gap + 1e-12);
        assert!(report.soo > 0.0);
    }

    #[test]
    fn mean_mismatch_rejected() {
        let d = extreme(&[0.7, 0.7], 0.1);
        let err = soc_gap(&trust(&[0.7, 0.75]), &d, Budget::Exact).unwrap_err();
        assert!(matches!(err, WmvError::MeanMismatch { index: 1, .. }));
    }

    #[test]
    fn continuous_exact_rejected() {
        let d = TrustworthinessDistribution::broadcast(Marginal::beta(0.7, 0.01), 2).unwrap();
        assert!(expected_correctness_revealed(&d, Budget::Exact).is_err());
        assert_eq!(Budget::auto(&d, 10, 1), Budget::MonteCarlo { runs: 10, seed: 1 });
    }

    #[test]
    fn mean_shortcut_matches_enumeration() {
        let d = TrustworthinessDistribution::new(vec![
            Marginal::extreme_on_cube(0.6, 0.95, 0.8),
            Marginal::TwoPoint { a: 0.5, b: 0.9, prob_a: 0.25 },
            Marginal::point_mass(0.7),
        ])
        .unwrap();
        let t = trust(&[0.9, 0.6, 0.55]);
        let e = expected_correctness_fixed_trust(&t, &d, Budget::Exact).unwrap();
        let m = correctness_at_mean(&t, &d).unwrap();
        assert!((e.value - m).abs() < 1e-12);
    }

    #[test]
    fn fixed_truth_point_mass_is_plain_correctness() {
        let d = TrustworthinessDistribution::from_means(&RUNNING, Marginal::point_mass).unwrap();
        let truth = ProbabilityVector::trustworthiness(RUNNING.to_vec()).unwrap();
        let e = expected_correctness_fixed_truth(&truth, &d, Budget::Exact).unwrap();
        assert!((e.value - 0.845).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_is_seeded() {
        let d = TrustworthinessDistribution::from_means(&RUNNING, |m| Marginal::trunc_normal(m, 0.1, None)).unwrap();
        let b = Budget::MonteCarlo { runs: 2000, seed: 11 };
        assert_eq!(
            soo(&trust(&RUNNING), &d, b).unwrap(),
            soo(&trust(&RUNNING), &d, b).unwrap()
        );
    }
}
