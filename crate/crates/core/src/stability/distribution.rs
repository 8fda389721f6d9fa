use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Result, WmvError};

/// Probabilities must sum to one within this tolerance.
const PROB_TOLERANCE: f64 = 1e-12;

/// Distribution of one source's trustworthiness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Marginal {
    PointMass {
        p: f64,
    },
    TwoPoint {
        a: f64,
        b: f64,
        prob_a: f64,
    },
    /// Arbitrary finite support.
    Discrete {
        values: Vec<f64>,
        probs: Vec<f64>,
    },
    /// `mean - delta` and `mean + delta`, each with probability one half.
    ExtremeSymmetric {
        mean: f64,
        delta: f64,
    },
    /// The endpoints of `[a, b]`, weighted so the mean is `mean`.
    ExtremeOnCube {
        a: f64,
        b: f64,
        mean: f64,
    },
    BetaMeanVar {
        mean: f64,
        variance: f64,
    },
    /// Normal(mean, sigma) truncated to `[mean - half_width, mean + half_width]`.
    TruncNormalSymmetric {
        mean: f64,
        sigma: f64,
        half_width: f64,
    },
}

fn unit(x: f64) -> bool {
    x.is_finite() && (0.0..=1.0).contains(&x)
}

/// Shape parameters (α, β) of the beta distribution with the given moments.
pub fn fit_beta_mean_var(mean: f64, variance: f64) -> Result<(f64, f64)> {
    if !(mean > 0.0 && mean < 1.0) {
        return Err(WmvError::InvalidArgument(format!(
            "beta mean {mean} must lie in (0, 1)"
        )));
    }
    let max_var = mean * (1.0 - mean);
    if !(variance > 0.0 && variance < max_var) {
        return Err(WmvError::InvalidArgument(format!(
            "beta variance {variance} must lie in (0, {max_var})"
        )));
    }
    let common = max_var / variance - 1.0;
    Ok((mean * common, (1.0 - mean) * common))
}

impl Marginal {
    pub fn point_mass(p: f64) -> Self {
        Marginal::PointMass { p }
    }

    pub fn extreme_symmetric(mean: f64, delta: f64) -> Self {
        Marginal::ExtremeSymmetric { mean, delta }
    }

    pub fn extreme_on_cube(a: f64, b: f64, mean: f64) -> Self {
        Marginal::ExtremeOnCube { a, b, mean }
    }

    pub fn beta(mean: f64, variance: f64) -> Self {
        Marginal::BetaMeanVar { mean, variance }
    }

    /// Symmetrically truncated normal. Without an explicit half-width the
    /// truncation keeps values in [0.5, 1] (or in [0, 1] for means below 0.5).
    pub fn trunc_normal(mean: f64, sigma: f64, half_width: Option<f64>) -> Self {
        let half_width = half_width.unwrap_or_else(|| default_half_width(mean));
        Marginal::TruncNormalSymmetric {
            mean,
            sigma,
            half_width,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        match *self {
            Marginal::PointMass { p } => {
                if !unit(p) {
                    return Err(format!("point mass {p} outside [0, 1]"));
                }
            }
            Marginal::TwoPoint { a, b, prob_a } => {
                if !unit(a) || !unit(b) {
                    return Err(format!("support {{{a}, {b}}} outside [0, 1]"));
                }
                if !unit(prob_a) {
                    return Err(format!("probability {prob_a} outside [0, 1]"));
                }
            }
            Marginal::Discrete {
                ref values,
                ref probs,
            } => {
                if values.is_empty() || values.len() != probs.len() {
                    return Err("discrete support needs matching, non-empty values and probs".into());
                }
                if let Some(v) = values.iter().find(|v| !unit(**v)) {
                    return Err(format!("support point {v} outside [0, 1]"));
                }
                if let Some(q) = probs.iter().find(|q| !unit(**q)) {
                    return Err(format!("probability {q} outside [0, 1]"));
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > PROB_TOLERANCE * values.len() as f64 {
                    return Err(format!("probabilities sum to {total}, not 1"));
                }
            }
            Marginal::ExtremeSymmetric { mean, delta } => {
                if !(delta >= 0.0) || !unit(mean - delta) || !unit(mean + delta) {
                    return Err(format!(
                        "support {{{mean} - {delta}, {mean} + {delta}}} outside [0, 1]"
                    ));
                }
            }
            Marginal::ExtremeOnCube { a, b, mean } => {
                if !unit(a) || !unit(b) || !(a <= mean && mean <= b) {
                    return Err(format!("need 0 <= a <= mean <= b <= 1 (a={a}, mean={mean}, b={b})"));
                }
            }
            Marginal::BetaMeanVar { mean, variance } => {
                fit_beta_mean_var(mean, variance).map_err(|e| e.to_string())?;
            }
            Marginal::TruncNormalSymmetric {
                mean,
                sigma,
                half_width,
            } => {
                if !(sigma >= 0.0) || !sigma.is_finite() {
                    return Err(format!("sigma {sigma} must be finite and non-negative"));
                }
                if !(half_width >= 0.0) || !unit(mean - half_width) || !unit(mean + half_width) {
                    return Err(format!(
                        "truncation [{mean} - {half_width}, {mean} + {half_width}] outside [0, 1]"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Analytic mean.
    pub fn mean(&self) -> f64 {
        match *self {
            Marginal::PointMass { p } => p,
            Marginal::TwoPoint { a, b, prob_a } => prob_a * a + (1.0 - prob_a) * b,
            Marginal::Discrete {
                ref values,
                ref probs,
            } => values.iter().zip(probs).map(|(v, q)| v * q).sum(),
            Marginal::ExtremeSymmetric { mean, .. }
            | Marginal::ExtremeOnCube { mean, .. }
            | Marginal::BetaMeanVar { mean, .. }
            | Marginal::TruncNormalSymmetric { mean, .. } => mean,
        }
    }

    /// Atoms with positive probability, or `None` for continuous marginals.
    pub fn support(&self) -> Option<Vec<(f64, f64)>> {
        let atoms = match *self {
            Marginal::PointMass { p } => vec![(p, 1.0)],
            Marginal::TwoPoint { a, b, prob_a } => vec![(a, prob_a), (b, 1.0 - prob_a)],
            Marginal::Discrete {
                ref values,
                ref probs,
            } => values.iter().copied().zip(probs.iter().copied()).collect(),
            Marginal::ExtremeSymmetric { mean, delta } => {
                if delta == 0.0 {
                    vec![(mean, 1.0)]
                } else {
                    vec![(mean - delta, 0.5), (mean + delta, 0.5)]
                }
            }
            Marginal::ExtremeOnCube { a, b, mean } => {
                if a == b {
                    vec![(a, 1.0)]
                } else {
                    vec![(a, (b - mean) / (b - a)), (b, (mean - a) / (b - a))]
                }
            }
            Marginal::BetaMeanVar { .. } => return None,
            Marginal::TruncNormalSymmetric {
                mean,
                sigma,
                half_width,
            } => {
                if sigma == 0.0 || half_width == 0.0 {
                    vec![(mean, 1.0)]
                } else {
                    return None;
                }
            }
        };
        Some(atoms.into_iter().filter(|&(_, q)| q > 0.0).collect())
    }

    pub fn is_discrete(&self) -> bool {
        self.support().is_some()
    }

    /// Largest distance from `center` to the support, when the support is
    /// bounded away from the open ends of (0, 1).
    pub fn half_width(&self, center: f64) -> Option<f64> {
        let (lo, hi) = match *self {
            Marginal::TruncNormalSymmetric {
                mean, half_width, ..
            } => (mean - half_width, mean + half_width),
            Marginal::BetaMeanVar { .. } => return None,
            _ => {
                let atoms = self.support()?;
                let lo = atoms.iter().map(|a| a.0).fold(f64::INFINITY, f64::min);
                let hi = atoms.iter().map(|a| a.0).fold(f64::NEG_INFINITY, f64::max);
                (lo, hi)
            }
        };
        Some((center - lo).max(hi - center).max(0.0))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Marginal::PointMass { p } => p,
            Marginal::BetaMeanVar { mean, variance } => {
                let (alpha, beta) = fit_beta_mean_var(mean, variance).expect("validated");
                Beta::new(alpha, beta).expect("positive shapes").sample(rng)
            }
            Marginal::TruncNormalSymmetric {
                mean,
                sigma,
                half_width,
            } => sample_trunc_normal(rng, mean, sigma, half_width),
            _ => {
                let atoms = self.support().expect("discrete");
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for &(v, q) in &atoms {
                    acc += q;
                    if u < acc {
                        return v;
                    }
                }
                atoms.last().expect("non-empty").0
            }
        }
    }
}

fn default_half_width(mean: f64) -> f64 {
    if mean >= 0.5 {
        (mean - 0.5).min(1.0 - mean)
    } else {
        mean.min(1.0 - mean)
    }
    .max(0.0)
}

/// Inverse-CDF draw from a normal truncated symmetrically about its mean.
fn sample_trunc_normal<R: Rng + ?Sized>(rng: &mut R, mean: f64, sigma: f64, half_width: f64) -> f64 {
    if sigma == 0.0 || half_width == 0.0 {
        return mean;
    }
    let std = Normal::standard();
    let edge = half_width / sigma;
    let lo = std.cdf(-edge);
    let hi = std.cdf(edge);
    let u = lo + (hi - lo) * rng.random::<f64>();
    let z = std.inverse_cdf(u);
    let z = if z.is_finite() { z.clamp(-edge, edge) } else { 0.0 };
    (mean + sigma * z).clamp(mean - half_width, mean + half_width)
}

/// Independent per-source trustworthiness distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrustworthinessDistribution {
    marginals: Vec<Marginal>,
}

impl TrustworthinessDistribution {
    pub fn new(marginals: Vec<Marginal>) -> Result<Self> {
        if marginals.is_empty() {
            return Err(WmvError::Empty {
                field: "distribution",
            });
        }
        for (index, m) in marginals.iter().enumerate() {
            m.validate()
                .map_err(|reason| WmvError::InvalidDistribution { index, reason })?;
        }
        Ok(Self { marginals })
    }

    pub fn broadcast(marginal: Marginal, n: usize) -> Result<Self> {
        Self::new(vec![marginal; n])
    }

    /// One marginal per mean, built by `f`.
    pub fn from_means(means: &[f64], f: impl Fn(f64) -> Marginal) -> Result<Self> {
        Self::new(means.iter().map(|&m| f(m)).collect())
    }

    pub fn marginals(&self) -> &[Marginal] {
        &self.marginals
    }

    pub fn len(&self) -> usize {
        self.marginals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marginals.is_empty()
    }

    pub fn means(&self) -> Vec<f64> {
        self.marginals.iter().map(Marginal::mean).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.marginals.iter().all(Marginal::is_discrete)
    }

    /// Number of joint support points, or `None` if some marginal is continuous.
    pub fn support_size(&self) -> Option<u128> {
        self.marginals.iter().try_fold(1u128, |acc, m| {
            m.support()
                .map(|s| acc.saturating_mul(s.len() as u128))
        })
    }

    /// Joint support points with their probabilities, in odometer order
    /// (the last source varies fastest).
    pub fn joint_support(&self, limit: u128) -> Result<Vec<(Vec<f64>, f64)>> {
        let supports: Vec<Vec<(f64, f64)>> = self
            .marginals
            .iter()
            .enumerate()
            .map(|(index, m)| {
                m.support().ok_or_else(|| WmvError::InvalidDistribution {
                    index,
                    reason: "exact mode needs a discrete marginal".into(),
                })
            })
            .collect::<Result<_>>()?;
        let size = supports
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
        if size > limit {
            return Err(WmvError::SupportOverflow { size, limit });
        }
        let n = supports.len();
        let mut out = Vec::with_capacity(size as usize);
        let mut idx = vec![0usize; n];
        loop {
            let mut point = Vec::with_capacity(n);
            let mut prob = 1.0;
            for (s, &k) in supports.iter().zip(&idx) {
                point.push(s[k].0);
                prob *= s[k].1;
            }
            out.push((point, prob));
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < supports[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.marginals.iter().map(|m| m.sample(rng)).collect()
    }

    /// Per-source support half-widths about `centers`, if every marginal has one.
    pub fn half_widths(&self, centers: &[f64]) -> Option<Vec<f64>> {
        self.marginals
            .iter()
            .zip(centers)
            .map(|(m, &c)| m.half_width(c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::replicate_rng;

    #[test]
    fn beta_fit_examples() {
        let (a, b) = fit_beta_mean_var(0.7, 0.01).unwrap();
        assert!((a - 14.0).abs() < 1e-12 && (b - 6.0).abs() < 1e-12);
        let (a, b) = fit_beta_mean_var(0.5, 0.05).unwrap();
        assert!((a - 2.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
    }

    #[test]
    fn beta_fit_rejects_infeasible_variance() {
        assert!(fit_beta_mean_var(0.7, 0.25).is_err());
        assert!(fit_beta_mean_var(0.7, 0.0).is_err());
        assert!(fit_beta_mean_var(1.0, 0.01).is_err());
    }

    #[test]
    fn extreme_on_cube_probabilities() {
        let m = Marginal::extreme_on_cube(0.6, 0.9, 0.7);
        let s = m.support().unwrap();
        assert!((s[0].1 - 2.0 / 3.0).abs() < 1e-15);
        assert!((s[1].1 - 1.0 / 3.0).abs() < 1e-15);
        let mean: f64 = s.iter().map(|(v, q)| v * q).sum();
        assert!((mean - 0.7).abs() < 1e-15);
    }

    #[test]
    fn invalid_marginals_rejected() {
        let bad = [
            Marginal::extreme_symmetric(0.95, 0.1),
            Marginal::extreme_on_cube(0.8, 0.9, 0.7),
            Marginal::TwoPoint { a: 0.2, b: 1.1, prob_a: 0.5 },
            Marginal::Discrete { values: vec![0.5, 0.9], probs: vec![0.5, 0.4] },
            Marginal::beta(0.7, 0.3),
            Marginal::trunc_normal(0.7, 0.1, Some(0.4)),
        ];
        for m in bad {
            let err = TrustworthinessDistribution::new(vec![Marginal::point_mass(0.7), m]).unwrap_err();
            assert!(matches!(err, WmvError::InvalidDistribution { index: 1, .. }));
        }
    }

    #[test]
    fn default_truncation_stays_in_upper_half() {
        let Marginal::TruncNormalSymmetric { half_width, .. } = Marginal::trunc_normal(0.8, 0.1, None) else {
            unreachable!()
        };
        assert!((half_width - 0.2).abs() < 1e-15);
        let Marginal::TruncNormalSymmetric { half_width, .. } = Marginal::trunc_normal(0.6, 0.1, None) else {
            unreachable!()
        };
        assert!((half_width - 0.1).abs() < 1e-15);
    }

    #[test]
    fn trunc_normal_samples_stay_inside() {
        let m = Marginal::trunc_normal(0.7, 0.5, None);
        let mut rng = replicate_rng(3, 0);
        for _ in 0..10_000 {
            let x = m.sample(&mut rng);
            assert!((0.5..=0.9).contains(&x));
        }
    }

    #[test]
    fn tiny_sigma_trunc_normal_is_near_mean() {
        let m = Marginal::trunc_normal(0.7, 1e-9, None);
        let mut rng = replicate_rng(3, 1);
        for _ in 0..1000 {
            assert!((m.sample(&mut rng) - 0.7).abs() < 1e-7);
        }
    }

    #[test]
    fn joint_support_enumerates_product() {
        let d = TrustworthinessDistribution::new(vec![
            Marginal::extreme_symmetric(0.7, 0.1),
            Marginal::point_mass(0.6),
            Marginal::Discrete { values: vec![0.5, 0.7, 0.9], probs: vec![0.25, 0.5, 0.25] },
        ])
        .unwrap();
        assert_eq!(d.support_size(), Some(6));
        let pts = d.joint_support(4096).unwrap();
        assert_eq!(pts.len(), 6);
        let total: f64 = pts.iter().map(|p| p.1).sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!(matches!(d.joint_support(5), Err(WmvError::SupportOverflow { size: 6, .. })));
    }

    #[test]
    fn half_widths() {
        let d = TrustworthinessDistribution::new(vec![
            Marginal::extreme_symmetric(0.7, 0.05),
            Marginal::trunc_normal(0.8, 0.3, Some(0.1)),
        ])
        .unwrap();
        let hw = d.half_widths(&[0.7, 0.8]).unwrap();
        assert!((hw[0] - 0.05).abs() < 1e-12 && (hw[1] - 0.1).abs() < 1e-12);
        let beta = TrustworthinessDistribution::new(vec![Marginal::beta(0.7, 0.01)]).unwrap();
        assert!(beta.half_widths(&[0.7]).is_none());
    }
}
