use super::{dedup_sorted, IdenticalGroupSpec, CLUSTER_TOLERANCE};
use crate::decision::DEFAULT_ENUMERATION_LIMIT;
use crate::error::{Result, WmvError};
use crate::probability::ProbabilityVector;
use crate::realization::{full_mask, mask_probability};

/// For every pair (τ', −τ') of realizations of `others`, the probabilities
/// (larger, smaller). Each pair is visited once.
fn subrealization_pairs(others: &[f64]) -> Vec<(f64, f64)> {
    let k = others.len();
    if k == 0 {
        return Vec::new();
    }
    let full = full_mask(k);
    (0..1u64 << (k - 1))
        .map(|mask| {
            let a = mask_probability(mask, others);
            let b = mask_probability(!mask & full, others);
            if a >= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

fn interior(x: f64) -> bool {
    x > 0.5 + CLUSTER_TOLERANCE && x < 1.0 - CLUSTER_TOLERANCE
}

fn check_capacity(n: usize) -> Result<()> {
    if n > DEFAULT_ENUMERATION_LIMIT {
        return Err(WmvError::Capacity {
            what: "breakpoint prediction",
            n,
            limit: DEFAULT_ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Where the direct-mode curve of source `index` can bend.
///
/// The pair (τ', −τᵢ) / (−τ', τᵢ) swaps membership at
/// pᵢ = ℙ(τ') / (ℙ(τ') + ℙ(−τ')), taking τ' as the likelier side.
/// Only thresholds strictly inside (0.5, 1) are returned, sorted and
/// deduplicated.
pub fn predict_breakpoints_single(base_trust: &ProbabilityVector, index: usize) -> Result<Vec<f64>> {
    let n = base_trust.len();
    if index >= n {
        return Err(WmvError::IndexOutOfRange { index, n });
    }
    check_capacity(n)?;
    let others: Vec<f64> = base_trust
        .values()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, &p)| p)
        .collect();
    let thresholds = subrealization_pairs(&others)
        .into_iter()
        .filter(|&(hi, lo)| lo > 0.0 && hi > lo)
        .map(|(hi, lo)| hi / (hi + lo))
        .filter(|&t| interior(t))
        .collect();
    Ok(dedup_sorted(thresholds))
}

/// Where the direct-mode curve of an identical group can change regime.
///
/// With k of the m identical sources correct (k < m/2), the pair flips at
/// p = 1 / (1 + (ℙ(−τ')/ℙ(τ'))^(1/(m−2k))).
pub fn predict_breakpoints_identical(spec: &IdenticalGroupSpec) -> Result<Vec<f64>> {
    check_capacity(spec.n())?;
    let m = spec.m;
    let mut thresholds = Vec::new();
    for (hi, lo) in subrealization_pairs(&spec.rest) {
        if lo <= 0.0 || hi <= lo {
            continue;
        }
        let ratio = lo / hi;
        for k in (0..m).take_while(|k| 2 * k < m) {
            let exponent = (m - 2 * k) as f64;
            let t = 1.0 / (1.0 + ratio.powf(1.0 / exponent));
            if interior(t) {
                thresholds.push(t);
            }
        }
    }
    Ok(dedup_sorted(thresholds))
}
