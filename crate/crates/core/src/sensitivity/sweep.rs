use serde::Serialize;

use super::{check_grid, predict_breakpoints_identical, predict_breakpoints_single};
use super::{IdenticalGroupSpec, SweepMode, SweepResult};
use crate::correctness::correctness;
use crate::decision::DecisionSet;
use crate::error::{Result, WmvError};
use crate::probability::{ProbabilityVector, Role};

/// Correctness over a product grid of two coordinates, row-major
/// (rows follow `grid_i`, columns follow `grid_j`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Surface {
    pub mode: SweepMode,
    pub index_i: usize,
    pub index_j: usize,
    pub grid_i: Vec<f64>,
    pub grid_j: Vec<f64>,
    pub values: Vec<f64>,
}

impl Surface {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.grid_j.len() + col]
    }

    pub fn rows(&self) -> usize {
        self.grid_i.len()
    }

    pub fn cols(&self) -> usize {
        self.grid_j.len()
    }
}

fn par_map<T, F>(items: &[f64], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(|&x| f(x)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(|&x| f(x)).collect()
    }
}

fn validate_bases(trust: &ProbabilityVector, truth: &ProbabilityVector) -> Result<()> {
    if trust.role() != Role::Trust {
        return Err(WmvError::InvalidArgument(
            "base trust must have the trust role".into(),
        ));
    }
    trust.check_len(truth)
}

fn check_index(index: usize, n: usize) -> Result<()> {
    if index >= n {
        return Err(WmvError::IndexOutOfRange { index, n });
    }
    Ok(())
}

fn check_mode_grid(mode: SweepMode, grid: &[f64]) -> Result<()> {
    match mode {
        SweepMode::Direct => check_grid(grid, 0.5, 1.0, "grid"),
        SweepMode::TruthVarying | SweepMode::TrustVarying => check_grid(grid, 0.0, 1.0, "grid"),
    }
}

/// Evaluate ω with the varied coordinates set per `mode`.
struct Evaluator<'a> {
    mode: SweepMode,
    trust: &'a ProbabilityVector,
    truth: &'a ProbabilityVector,
    /// Fixed decision set, reused when only the truth moves.
    fixed: Option<DecisionSet>,
}

impl<'a> Evaluator<'a> {
    fn new(mode: SweepMode, trust: &'a ProbabilityVector, truth: &'a ProbabilityVector) -> Result<Self> {
        let fixed = match mode {
            SweepMode::TruthVarying => Some(DecisionSet::build(trust)?),
            _ => None,
        };
        Ok(Self {
            mode,
            trust,
            truth,
            fixed,
        })
    }

    fn eval(&self, coords: &[(usize, f64)]) -> Result<f64> {
        let mut trust = self.trust.values().to_vec();
        let mut truth = self.truth.values().to_vec();
        for &(i, x) in coords {
            match self.mode {
                SweepMode::Direct => {
                    trust[i] = x;
                    truth[i] = x;
                }
                SweepMode::TruthVarying => truth[i] = x,
                SweepMode::TrustVarying => trust[i] = x.max(0.5),
            }
        }
        if let Some(set) = &self.fixed {
            return Ok(set.mass(&truth));
        }
        correctness(
            &ProbabilityVector::trust(trust)?,
            &ProbabilityVector::trustworthiness(truth)?,
        )
    }
}

/// Correctness as one source's coordinate runs over `grid`.
pub fn sweep(
    base_trust: &ProbabilityVector,
    base_truth: &ProbabilityVector,
    mode: SweepMode,
    index: usize,
    grid: &[f64],
) -> Result<SweepResult> {
    validate_bases(base_trust, base_truth)?;
    check_index(index, base_trust.len())?;
    check_mode_grid(mode, grid)?;
    let evaluator = Evaluator::new(mode, base_trust, base_truth)?;
    let values = par_map(grid, |x| evaluator.eval(&[(index, x)]))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let breakpoints = match mode {
        SweepMode::Direct => Some(predict_breakpoints_single(base_trust, index)?),
        _ => None,
    };
    Ok(SweepResult {
        mode,
        varied_indices: vec![index],
        grid: grid.to_vec(),
        values,
        breakpoints,
        base_trust: base_trust.values().to_vec(),
        base_truth: base_truth.values().to_vec(),
    })
}

/// Correctness as the shared probability of an identical group varies.
///
/// The group occupies indices `0..m`; `spec.rest` follows. Only the
/// direct regime is supported.
pub fn sweep_identical(spec: &IdenticalGroupSpec, mode: SweepMode) -> Result<SweepResult> {
    if mode != SweepMode::Direct {
        return Err(WmvError::InvalidArgument(
            "identical-group sweeps support the direct mode only".into(),
        ));
    }
    check_grid(&spec.p_grid, 0.5, 1.0, "p_grid")?;
    let values = par_map(&spec.p_grid, |p| {
        let v = spec.vector_at(p);
        correctness(
            &ProbabilityVector::trust(v.clone())?,
            &ProbabilityVector::trustworthiness(v)?,
        )
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let base = spec.vector_at(spec.p_grid[0]);
    Ok(SweepResult {
        mode,
        varied_indices: (0..spec.m).collect(),
        grid: spec.p_grid.clone(),
        values,
        breakpoints: Some(predict_breakpoints_identical(spec)?),
        base_trust: base.clone(),
        base_truth: base,
    })
}

/// Correctness over the product of two coordinate grids.
pub fn surface_2d(
    base_trust: &ProbabilityVector,
    base_truth: &ProbabilityVector,
    mode: SweepMode,
    index_i: usize,
    index_j: usize,
    grid_i: &[f64],
    grid_j: &[f64],
) -> Result<Surface> {
    validate_bases(base_trust, base_truth)?;
    check_index(index_i, base_trust.len())?;
    check_index(index_j, base_trust.len())?;
    if index_i == index_j {
        return Err(WmvError::InvalidArgument(
            "surface needs two distinct indices".into(),
        ));
    }
    check_mode_grid(mode, grid_i)?;
    check_mode_grid(mode, grid_j)?;
    let evaluator = Evaluator::new(mode, base_trust, base_truth)?;
    let rows = par_map(grid_i, |xi| {
        grid_j
            .iter()
            .map(|&xj| evaluator.eval(&[(index_i, xi), (index_j, xj)]))
            .collect::<Result<Vec<_>>>()
    });
    let mut values = Vec::with_capacity(grid_i.len() * grid_j.len());
    for row in rows {
        values.extend(row?);
    }
    Ok(Surface {
        mode,
        index_i,
        index_j,
        grid_i: grid_i.to_vec(),
        grid_j: grid_j.to_vec(),
        values,
    })
}
