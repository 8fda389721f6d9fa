use serde::Serialize;

use crate::error::{Result, WmvError};
use crate::probability::{ProbabilityVector, Role};

/// Log-odds voting weights.
///
/// Sources trusted with probability one cannot carry a finite weight; they
/// form an infinite tier that outvotes every finite weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    /// `ln(p / (1 - p))`, or `None` for members of the infinite tier.
    finite: Vec<Option<f64>>,
    infinite: Vec<usize>,
}

impl WeightVector {
    pub fn len(&self) -> usize {
        self.finite.len()
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty()
    }

    pub fn weight(&self, index: usize) -> Option<f64> {
        self.finite.get(index).copied().flatten()
    }

    pub fn finite_weights(&self) -> &[Option<f64>] {
        &self.finite
    }

    pub fn infinite_set(&self) -> &[usize] {
        &self.infinite
    }

    pub fn is_infinite(&self, index: usize) -> bool {
        self.infinite.binary_search(&index).is_ok()
    }
}

pub fn compute_weights(trust: &ProbabilityVector) -> Result<WeightVector> {
    if trust.role() != Role::Trust {
        return Err(WmvError::InvalidArgument(
            "weights need a trust vector".into(),
        ));
    }
    let mut finite = Vec::with_capacity(trust.len());
    let mut infinite = Vec::new();
    for (i, &p) in trust.values().iter().enumerate() {
        if p == 1.0 {
            finite.push(None);
            infinite.push(i);
        } else if p == 0.5 {
            finite.push(Some(0.0));
        } else {
            finite.push(Some((p / (1.0 - p)).ln()));
        }
    }
    Ok(WeightVector { finite, infinite })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_odds_weigh_nothing() {
        let w = compute_weights(&ProbabilityVector::trust(vec![0.5]).unwrap()).unwrap();
        assert_eq!(w.weight(0), Some(0.0));
    }

    #[test]
    fn log_odds_of_point_eight() {
        let w = compute_weights(&ProbabilityVector::trust(vec![0.8]).unwrap()).unwrap();
        assert!((w.weight(0).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert!((w.weight(0).unwrap() - 1.386294).abs() < 1e-6);
    }

    #[test]
    fn certain_trust_joins_infinite_tier() {
        let w = compute_weights(&ProbabilityVector::trust(vec![0.7, 1.0]).unwrap()).unwrap();
        assert_eq!(w.weight(1), None);
        assert_eq!(w.infinite_set(), &[1]);
        assert!(w.is_infinite(1));
        assert!(!w.is_infinite(0));
    }

    #[test]
    fn trustworthiness_role_rejected() {
        let truth = ProbabilityVector::trustworthiness(vec![0.7]).unwrap();
        assert!(compute_weights(&truth).is_err());
    }
}
