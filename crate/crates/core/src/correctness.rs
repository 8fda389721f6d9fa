use rand::Rng;

use crate::decision::{DecisionSet, PairRule};
use crate::error::{Result, WmvError};
use crate::montecarlo::{replicate_map, Estimate, EstimateMode};
use crate::probability::{ProbabilityVector, Role};

/// ω(trust, truth): probability that weighted majority voting with weights
/// from `trust` decides correctly when sources behave according to `truth`.
pub fn correctness(trust: &ProbabilityVector, truth: &ProbabilityVector) -> Result<f64> {
    check_roles(trust, truth)?;
    let set = DecisionSet::build(trust)?;
    Ok(set.mass(truth.values()))
}

/// ω(p): correctness when the decision maker knows the trustworthiness.
///
/// Trustworthiness below one half is clamped to one half for the weights.
pub fn revealed_correctness(truth: &[f64]) -> Result<f64> {
    let trust = ProbabilityVector::clamped_trust(truth)?;
    let set = DecisionSet::build(&trust)?;
    Ok(set.mass(truth))
}

/// Sampling oracle for ω(trust, truth).
///
/// Draws `runs` realizations from `truth` and checks each against the
/// voting rule directly, without enumerating the decision set.
pub fn simulate_correctness(
    trust: &ProbabilityVector,
    truth: &ProbabilityVector,
    runs: u64,
    seed: u64,
) -> Result<Estimate> {
    check_roles(trust, truth)?;
    if runs == 0 {
        return Err(WmvError::InvalidArgument("runs must be at least 1".into()));
    }
    let rule = PairRule::new(trust)?;
    let p = truth.values();
    let hits = replicate_map(runs, seed, |rng, _| {
        let mut mask = 0u64;
        for (i, &pi) in p.iter().enumerate() {
            if rng.random::<f64>() < pi {
                mask |= 1 << i;
            }
        }
        rule.compare(mask).member()
    });
    let count = hits.iter().filter(|&&h| h).count();
    let q = count as f64 / runs as f64;
    Ok(Estimate {
        value: q,
        stderr: (q * (1.0 - q) / runs as f64).sqrt(),
        mode: EstimateMode::MonteCarlo { runs },
    })
}

fn check_roles(trust: &ProbabilityVector, truth: &ProbabilityVector) -> Result<()> {
    if trust.role() != Role::Trust {
        return Err(WmvError::InvalidArgument(
            "first argument must be a trust vector".into(),
        ));
    }
    trust.check_len(truth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trust(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::trust(v.to_vec()).unwrap()
    }

    fn truth(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::trustworthiness(v.to_vec()).unwrap()
    }

    #[test]
    fn single_source_is_its_own_accuracy() {
        assert!((correctness(&trust(&[0.8]), &truth(&[0.8])).unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn running_example() {
        let p = [0.8, 0.75, 0.7, 0.6];
        let w = correctness(&trust(&p), &truth(&p)).unwrap();
        assert!((w - 0.845).abs() < 1e-12);
    }

    #[test]
    fn three_identical_sources() {
        let w = correctness(&trust(&[0.7; 3]), &truth(&[0.7; 3])).unwrap();
        assert!((w - 0.784).abs() < 1e-12);
    }

    #[test]
    fn dictator_decides_everything() {
        let w = correctness(&trust(&[0.9, 1.0, 0.6]), &truth(&[0.3, 1.0, 0.2])).unwrap();
        assert!((w - 1.0).abs() < 1e-15);
    }

    #[test]
    fn revealed_clamps_low_trustworthiness() {
        // the low source gets zero weight; the other decides
        let w = revealed_correctness(&[0.3, 0.8]).unwrap();
        assert!((w - 0.8).abs() < 1e-15);
        assert_eq!(
            revealed_correctness(&[0.8, 0.75, 0.7, 0.6]).unwrap(),
            correctness(&trust(&[0.8, 0.75, 0.7, 0.6]), &truth(&[0.8, 0.75, 0.7, 0.6])).unwrap()
        );
    }

    #[test]
    fn simulation_matches_bernoulli_mean() {
        let est = simulate_correctness(&trust(&[0.8]), &truth(&[0.8]), 100_000, 1).unwrap();
        let sigma = (0.8f64 * 0.2 / 100_000.0).sqrt();
        assert!((est.value - 0.8).abs() <= 4.0 * sigma);
    }

    #[test]
    fn simulation_with_certain_sources_is_exact() {
        let est = simulate_correctness(&trust(&[0.7, 0.6]), &truth(&[1.0, 1.0]), 5000, 9).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn simulation_rejects_zero_runs() {
        assert!(simulate_correctness(&trust(&[0.7]), &truth(&[0.7]), 0, 1).is_err());
    }

    #[test]
    fn simulation_is_seed_deterministic() {
        let p = [0.8, 0.75, 0.7, 0.6];
        let a = simulate_correctness(&trust(&p), &truth(&p), 20_000, 42).unwrap();
        let b = simulate_correctness(&trust(&p), &truth(&p), 20_000, 42).unwrap();
        assert_eq!(a, b);
    }
}
