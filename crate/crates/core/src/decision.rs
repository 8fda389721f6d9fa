use serde::Serialize;

use crate::error::{Result, WmvError};
use crate::probability::ProbabilityVector;
use crate::realization::{full_mask, probability_table, Realization};
use crate::summation::sum_descending;
use crate::weights::compute_weights;

/// Default bound on n for operations that enumerate all 2^n realizations.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// Relative difference below which two pair probabilities count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Outcome of comparing a realization with its negation under a trust vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairOutcome {
    /// The realization is the more probable member (strictly, after tiers).
    Wins,
    Loses,
    /// Tied; the lexicographic rule (source 0 at +1 wins) settles it.
    TieWins,
    TieLoses,
}

impl PairOutcome {
    pub(crate) fn member(self) -> bool {
        matches!(self, PairOutcome::Wins | PairOutcome::TieWins)
    }

    pub(crate) fn tied(self) -> bool {
        matches!(self, PairOutcome::TieWins | PairOutcome::TieLoses)
    }
}

/// The weighted majority rule, precomputed for one trust vector.
///
/// Pairs are ordered by the infinite tier first (count of certain sources on
/// the +1 side), then by the direct probability product over finite sources.
#[derive(Debug, Clone)]
pub(crate) struct PairRule {
    trust: Vec<f64>,
    infinite_mask: u64,
    full: u64,
}

impl PairRule {
    pub(crate) fn new(trust: &ProbabilityVector) -> Result<Self> {
        let weights = compute_weights(trust)?;
        let infinite_mask = weights
            .infinite_set()
            .iter()
            .fold(0u64, |m, &i| m | (1 << i));
        Ok(Self {
            trust: trust.values().to_vec(),
            infinite_mask,
            full: full_mask(trust.len()),
        })
    }

    pub(crate) fn compare(&self, mask: u64) -> PairOutcome {
        let opposite = !mask & self.full;
        let inf_here = (mask & self.infinite_mask).count_ones();
        let inf_there = (opposite & self.infinite_mask).count_ones();
        if inf_here != inf_there {
            return if inf_here > inf_there {
                PairOutcome::Wins
            } else {
                PairOutcome::Loses
            };
        }
        let mut here = 1.0f64;
        let mut there = 1.0f64;
        for (i, &p) in self.trust.iter().enumerate() {
            if self.infinite_mask >> i & 1 == 1 {
                continue;
            }
            if mask >> i & 1 == 1 {
                here *= p;
                there *= 1.0 - p;
            } else {
                here *= 1.0 - p;
                there *= p;
            }
        }
        let scale = here.max(there);
        if (here - there).abs() <= TIE_TOLERANCE * scale {
            if mask & 1 == 1 {
                PairOutcome::TieWins
            } else {
                PairOutcome::TieLoses
            }
        } else if here > there {
            PairOutcome::Wins
        } else {
            PairOutcome::Loses
        }
    }
}

/// Whether weighted majority voting with weights from `trust` decides
/// correctly on `tau`. Works for any n a realization can hold.
pub fn decides_correctly(trust: &ProbabilityVector, tau: &Realization) -> Result<bool> {
    if tau.len() != trust.len() {
        return Err(WmvError::LengthMismatch {
            field: "realization",
            expected: trust.len(),
            found: tau.len(),
        });
    }
    Ok(PairRule::new(trust)?.compare(tau.mask()).member())
}

/// The realizations on which weighted majority voting decides correctly.
#[derive(Debug, Clone, Serialize)]
pub struct DecisionSet {
    trust: ProbabilityVector,
    #[serde(skip)]
    bits: Vec<u64>,
    tie_count: usize,
}

impl DecisionSet {
    pub fn build(trust: &ProbabilityVector) -> Result<Self> {
        Self::build_with_limit(trust, DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn build_with_limit(trust: &ProbabilityVector, limit: usize) -> Result<Self> {
        let n = trust.len();
        let limit = limit.min(63);
        if n > limit {
            return Err(WmvError::Capacity {
                what: "decision set",
                n,
                limit,
            });
        }
        let rule = PairRule::new(trust)?;
        let total = 1usize << n;
        let mut bits = vec![0u64; total.div_ceil(64)];
        let mut tie_count = 0;
        // one representative per pair: the member with the top source at -1
        let half = total >> 1;
        for mask in 0..half.max(1) {
            let outcome = rule.compare(mask as u64);
            if outcome.tied() {
                tie_count += 1;
            }
            let winner = if outcome.member() {
                mask
            } else {
                !mask & (total - 1)
            };
            bits[winner / 64] |= 1 << (winner % 64);
        }
        Ok(Self {
            trust: trust.clone(),
            bits,
            tie_count,
        })
    }

    pub fn trust(&self) -> &ProbabilityVector {
        &self.trust
    }

    pub fn n(&self) -> usize {
        self.trust.len()
    }

    /// Number of pairs settled by the lexicographic tie-break.
    pub fn tie_count(&self) -> usize {
        self.tie_count
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        let m = mask as usize;
        m < (1usize << self.n()) && self.bits[m / 64] >> (m % 64) & 1 == 1
    }

    pub fn contains(&self, tau: &Realization) -> bool {
        tau.len() == self.n() && self.contains_mask(tau.mask())
    }

    /// Member bitmasks in increasing order.
    pub fn member_masks(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.n()).filter(|&m| self.contains_mask(m))
    }

    pub fn members(&self) -> impl Iterator<Item = Realization> + '_ {
        let n = self.n();
        self.member_masks()
            .map(move |m| Realization::from_mask(m, n).expect("mask within n"))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Probability that the true realization lands in this set, i.e. ω(trust, truth).
    pub fn mass(&self, truth: &[f64]) -> f64 {
        debug_assert_eq!(truth.len(), self.n());
        let table = probability_table(truth);
        let mut terms: Vec<f64> = self
            .member_masks()
            .map(|m| table[m as usize])
            .collect();
        sum_descending(&mut terms).clamp(0.0, 1.0)
    }
}

pub fn build_decision_set(trust: &ProbabilityVector) -> Result<DecisionSet> {
    DecisionSet::build(trust)
}
