use serde::{Deserialize, Serialize};

use super::{SweepMode, SweepResult, CLUSTER_TOLERANCE, SHAPE_TOLERANCE};
use crate::correctness::correctness;
use crate::error::{Result, WmvError};
use crate::probability::ProbabilityVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedShape {
    /// Non-decreasing, convex, affine between predicted breakpoints.
    PiecewiseLinearConvex,
    /// Non-decreasing and concave away from predicted breakpoints.
    SegmentwiseConcave,
    /// Finitely many flat levels, highest where trust matches trustworthiness.
    Staircase,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeViolation {
    NonMonotone { x: f64, drop: f64 },
    NonConvex { x: f64, slope_drop: f64 },
    /// A slope change with no predicted breakpoint within one grid step.
    UnpredictedSlopeChange { x: f64, slope_jump: f64 },
    NonConcave { x: f64, second_difference: f64 },
    TooManyLevels { count: usize, limit: usize },
    PlateauNotMaximal { max: f64, reference: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeReport {
    pub expected: ExpectedShape,
    pub violations: Vec<ShapeViolation>,
    /// Grid abscissas where the slope changed by more than the tolerance.
    pub slope_changes: Vec<f64>,
    /// Number of distinct levels (staircase checks only).
    pub levels: Option<usize>,
}

impl ShapeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn slopes(grid: &[f64], values: &[f64]) -> Vec<f64> {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, v)| (v[1] - v[0]) / (x[1] - x[0]))
        .collect()
}

fn monotone_violations(result: &SweepResult, out: &mut Vec<ShapeViolation>) {
    for (k, w) in result.values.windows(2).enumerate() {
        let drop = w[0] - w[1];
        if drop > SHAPE_TOLERANCE {
            out.push(ShapeViolation::NonMonotone {
                x: result.grid[k + 1],
                drop,
            });
        }
    }
}

fn near_breakpoint(breakpoints: &[f64], lo: f64, hi: f64) -> bool {
    breakpoints
        .iter()
        .any(|&b| b >= lo - CLUSTER_TOLERANCE && b <= hi + CLUSTER_TOLERANCE)
}

/// Number of distinct values after clustering.
pub(crate) fn count_levels(values: &[f64]) -> usize {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut count = 0;
    let mut last: Option<f64> = None;
    for v in sorted {
        if last.is_none_or(|l| v - l > CLUSTER_TOLERANCE) {
            count += 1;
        }
        last = Some(v);
    }
    count
}

/// Check a computed curve against the shape its regime should have.
pub fn verify_shape(result: &SweepResult, expected: ExpectedShape) -> Result<ShapeReport> {
    let len = result.grid.len();
    if len < 3 {
        return Err(WmvError::GridTooCoarse { points: len });
    }
    if result.values.len() != len {
        return Err(WmvError::LengthMismatch {
            field: "values",
            expected: len,
            found: result.values.len(),
        });
    }
    let grid = &result.grid;
    let s = slopes(grid, &result.values);
    let mut violations = Vec::new();
    let mut slope_changes = Vec::new();
    let mut levels = None;

    match expected {
        ExpectedShape::PiecewiseLinearConvex => {
            monotone_violations(result, &mut violations);
            for k in 1..s.len() {
                let jump = s[k] - s[k - 1];
                if jump < -SHAPE_TOLERANCE {
                    violations.push(ShapeViolation::NonConvex {
                        x: grid[k],
                        slope_drop: -jump,
                    });
                }
                if jump.abs() > SHAPE_TOLERANCE {
                    slope_changes.push(grid[k]);
                    if let Some(bps) = &result.breakpoints {
                        let step = (grid[k] - grid[k - 1]).max(grid[k + 1] - grid[k]);
                        if !near_breakpoint(bps, grid[k] - step, grid[k] + step) {
                            violations.push(ShapeViolation::UnpredictedSlopeChange {
                                x: grid[k],
                                slope_jump: jump,
                            });
                        }
                    }
                }
            }
        }
        ExpectedShape::SegmentwiseConcave => {
            monotone_violations(result, &mut violations);
            let bps = result.breakpoints.as_deref().unwrap_or(&[]);
            for k in 1..s.len() {
                let jump = s[k] - s[k - 1];
                if jump.abs() > SHAPE_TOLERANCE {
                    slope_changes.push(grid[k]);
                }
                if near_breakpoint(bps, grid[k - 1], grid[k + 1]) {
                    continue;
                }
                let second_difference = jump * (grid[k + 1] - grid[k - 1]) / 2.0;
                if second_difference > SHAPE_TOLERANCE {
                    violations.push(ShapeViolation::NonConcave {
                        x: grid[k],
                        second_difference,
                    });
                }
            }
        }
        ExpectedShape::Staircase => {
            let count = count_levels(&result.values);
            levels = Some(count);
            let n = result.base_trust.len();
            let limit = 1usize << (n.max(1) - 1).min(62);
            if count > limit {
                violations.push(ShapeViolation::TooManyLevels { count, limit });
            }
            if result.mode == SweepMode::TrustVarying && result.varied_indices.len() == 1 {
                let i = result.varied_indices[0];
                let mut trust = result.base_trust.clone();
                trust[i] = result.base_truth[i].max(0.5);
                let reference = correctness(
                    &ProbabilityVector::trust(trust)?,
                    &ProbabilityVector::trustworthiness(result.base_truth.clone())?,
                )?;
                let max = result.values.iter().copied().fold(f64::MIN, f64::max);
                if max > reference + CLUSTER_TOLERANCE {
                    violations.push(ShapeViolation::PlateauNotMaximal { max, reference });
                }
            }
        }
    }

    Ok(ShapeReport {
        expected,
        violations,
        slope_changes,
        levels,
    })
}
