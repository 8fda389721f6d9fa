use crate::error::{Result, WmvError};
use crate::probability::ProbabilityVector;

/// Largest number of sources a realization bitmask can hold.
pub const MAX_REALIZATION_SOURCES: usize = 64;

/// Which sources reported the correct option.
///
/// Bit `i` set means source `i` is in state +1 (correct), cleared means -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Realization {
    mask: u64,
    len: usize,
}

pub(crate) fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Realization {
    pub fn from_mask(mask: u64, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_REALIZATION_SOURCES {
            return Err(WmvError::Capacity {
                what: "realization",
                n: len,
                limit: MAX_REALIZATION_SOURCES,
            });
        }
        if mask & !full_mask(len) != 0 {
            return Err(WmvError::InvalidArgument(format!(
                "mask {mask:#x} has bits beyond {len} sources"
            )));
        }
        Ok(Self { mask, len })
    }

    /// Build from explicit +1/-1 states.
    pub fn from_states(states: &[i8]) -> Result<Self> {
        let mut mask = 0u64;
        for (i, &s) in states.iter().enumerate() {
            match s {
                1 => mask |= 1 << i,
                -1 => {}
                other => {
                    return Err(WmvError::InvalidArgument(format!(
                        "state {other} at index {i} is not +1 or -1"
                    )))
                }
            }
        }
        Self::from_mask(mask, states.len())
    }

    pub fn all_correct(len: usize) -> Result<Self> {
        Self::from_mask(full_mask(len), len)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// +1 or -1.
    pub fn state(&self, index: usize) -> i8 {
        if self.mask >> index & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn states(&self) -> Vec<i8> {
        (0..self.len).map(|i| self.state(i)).collect()
    }

    /// The opposite realization, every source flipped.
    pub fn negate(&self) -> Self {
        Self {
            mask: !self.mask & full_mask(self.len),
            len: self.len,
        }
    }

    pub fn correct_count(&self) -> u32 {
        self.mask.count_ones()
    }
}

impl std::ops::Neg for Realization {
    type Output = Realization;

    fn neg(self) -> Self::Output {
        self.negate()
    }
}

/// Probability of `mask` when source `i` is correct with probability `p[i]`.
pub(crate) fn mask_probability(mask: u64, p: &[f64]) -> f64 {
    let mut prob = 1.0;
    for (i, &pi) in p.iter().enumerate() {
        prob *= if mask >> i & 1 == 1 { pi } else { 1.0 - pi };
    }
    prob
}

/// Probabilities of all 2^n masks, built one source at a time.
///
/// Each entry multiplies its factors in index order, so it matches
/// [`mask_probability`] bit for bit.
pub(crate) fn probability_table(p: &[f64]) -> Vec<f64> {
    let mut table = vec![1.0f64; 1usize << p.len()];
    for (i, &pi) in p.iter().enumerate() {
        let bit = 1usize << i;
        for mask in 0..bit {
            let base = table[mask];
            table[mask | bit] = base * pi;
            table[mask] = base * (1.0 - pi);
        }
    }
    table
}

/// Probability of `tau` under independent sources with the given trustworthiness.
pub fn realization_probability(tau: &Realization, truth: &ProbabilityVector) -> Result<f64> {
    if tau.len() != truth.len() {
        return Err(WmvError::LengthMismatch {
            field: "realization",
            expected: truth.len(),
            found: tau.len(),
        });
    }
    Ok(mask_probability(tau.mask(), truth.values()))
}
