//! How correctness responds to trust and trustworthiness.
//!
//! Three regimes are covered: trust and trustworthiness moving together
//! ([`SweepMode::Direct`]), trustworthiness moving under fixed trust
//! ([`SweepMode::TruthVarying`]) and trust moving under fixed
//! trustworthiness ([`SweepMode::TrustVarying`]). Curves are computed
//! exactly; [`verify_shape`] checks them against the expected shape
//! (piecewise-linear convex, segmentwise concave, or staircase) and
//! the breakpoint predictors say where the pieces should join.

mod breakpoints;
mod shape;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WmvError};

pub use breakpoints::{predict_breakpoints_identical, predict_breakpoints_single};
pub use shape::{verify_shape, ExpectedShape, ShapeReport, ShapeViolation};
pub use sweep::{surface_2d, sweep, sweep_identical, Surface};

/// Absolute tolerance for shape checks on exactly computed curves.
pub const SHAPE_TOLERANCE: f64 = 1e-9;
/// Values closer than this are the same plateau / the same breakpoint.
pub const CLUSTER_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Trust and trustworthiness of the varied source move together.
    Direct,
    /// Only trustworthiness moves; trust stays fixed.
    TruthVarying,
    /// Only trust moves; trustworthiness stays fixed.
    TrustVarying,
}

impl SweepMode {
    pub const ALL: [SweepMode; 3] = [
        SweepMode::Direct,
        SweepMode::TruthVarying,
        SweepMode::TrustVarying,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepMode::Direct => "direct",
            SweepMode::TruthVarying => "truth_varying",
            SweepMode::TrustVarying => "trust_varying",
        }
    }
}

impl std::str::FromStr for SweepMode {
    type Err = WmvError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(SweepMode::Direct),
            "truth" | "truth_varying" => Ok(SweepMode::TruthVarying),
            "trust" | "trust_varying" => Ok(SweepMode::TrustVarying),
            other => Err(WmvError::InvalidArgument(format!(
                "unknown sweep mode {other:?}; expected direct, truth_varying or trust_varying"
            ))),
        }
    }
}

/// A one-dimensional correctness curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub mode: SweepMode,
    pub varied_indices: Vec<usize>,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Predicted abscissas where the curve changes regime, when known.
    pub breakpoints: Option<Vec<f64>>,
    /// Trust and trustworthiness the sweep started from.
    pub base_trust: Vec<f64>,
    pub base_truth: Vec<f64>,
}

/// m sources sharing one probability, plus fixed remaining sources.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdenticalGroupSpec {
    pub m: usize,
    pub p_grid: Vec<f64>,
    pub rest: Vec<f64>,
}

impl IdenticalGroupSpec {
    pub fn new(m: usize, p_grid: Vec<f64>, rest: Vec<f64>) -> Result<Self> {
        if m == 0 {
            return Err(WmvError::InvalidArgument(
                "identical group needs m >= 1".into(),
            ));
        }
        for (index, &value) in rest.iter().enumerate() {
            if !(0.5..=1.0).contains(&value) {
                return Err(WmvError::Domain {
                    field: "rest",
                    index,
                    value,
                    expected: "[0.5, 1]",
                });
            }
        }
        Ok(Self { m, p_grid, rest })
    }

    pub fn n(&self) -> usize {
        self.m + self.rest.len()
    }

    /// Full probability vector with the identical group at `p`.
    pub fn vector_at(&self, p: f64) -> Vec<f64> {
        let mut v = vec![p; self.m];
        v.extend_from_slice(&self.rest);
        v
    }
}

/// `points` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 || !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(WmvError::InvalidGrid {
            reason: format!("need min < max and at least 2 points (got {min}, {max}, {points})"),
        });
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points)
        .map(|k| if k + 1 == points { max } else { min + step * k as f64 })
        .collect())
}

pub(crate) fn check_grid(grid: &[f64], lo: f64, hi: f64, field: &'static str) -> Result<()> {
    if grid.is_empty() {
        return Err(WmvError::InvalidGrid {
            reason: "grid is empty".into(),
        });
    }
    for (index, &x) in grid.iter().enumerate() {
        if !x.is_finite() || x < lo || x > hi {
            return Err(WmvError::Domain {
                field,
                index,
                value: x,
                expected: if lo == 0.5 { "[0.5, 1]" } else { "[0, 1]" },
            });
        }
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(WmvError::InvalidGrid {
            reason: "grid must be strictly increasing".into(),
        });
    }
    Ok(())
}

pub(crate) fn dedup_sorted(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(xs.len());
    for x in xs {
        if out.last().is_none_or(|&last| x - last > CLUSTER_TOLERANCE) {
            out.push(x);
        }
    }
    out
}
