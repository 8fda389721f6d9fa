use serde::{Deserialize, Serialize};

use crate::correctness::{correctness, revealed_correctness};
use crate::error::{Result, WmvError};
use crate::probability::{ProbabilityVector, Role};
use crate::summation::sum_descending;

/// Largest number of non-degenerate axes accepted by the vertex bounds.
pub const VERTEX_LIMIT: usize = 12;

/// Slack allowed when checking δᵢ ≤ 1 − p̂ᵢ.
const DELTA_SLACK: f64 = 1e-12;

fn check_deltas(trust: &ProbabilityVector, deltas: &[f64]) -> Result<()> {
    if trust.role() != Role::Trust {
        return Err(WmvError::InvalidArgument(
            "bounds need a trust vector".into(),
        ));
    }
    if deltas.len() != trust.len() {
        return Err(WmvError::LengthMismatch {
            field: "deltas",
            expected: trust.len(),
            found: deltas.len(),
        });
    }
    for (index, (&d, &p)) in deltas.iter().zip(trust.values()).enumerate() {
        if !(d >= 0.0) || !d.is_finite() || d > 1.0 - p + DELTA_SLACK {
            return Err(WmvError::Domain {
                field: "delta",
                index,
                value: d,
                expected: "0 <= delta <= 1 - trust",
            });
        }
    }
    Ok(())
}

/// δᵢ / (1 − p̂ᵢ), with 0/0 read as 0.
fn ratios<'a>(trust: &'a [f64], deltas: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
    trust.iter().zip(deltas).map(|(&p, &d)| {
        if d == 0.0 {
            0.0
        } else {
            (d / (1.0 - p)).min(1.0)
        }
    })
}

pub(crate) fn strong_from_omega(omega: f64, trust: &[f64], deltas: &[f64]) -> f64 {
    let keep: f64 = ratios(trust, deltas).map(|r| 1.0 - r / 2.0).product();
    (1.0 - omega) * (1.0 - keep)
}

pub(crate) fn weak_from_omega(omega: f64, trust: &[f64], deltas: &[f64]) -> f64 {
    let total: f64 = ratios(trust, deltas).sum();
    (1.0 - omega) / 2.0 * total
}

fn omega_at_trust(trust: &ProbabilityVector) -> Result<f64> {
    correctness(trust, &trust.with_role(Role::Trustworthiness)?)
}

/// Product-form bound on the SoO for trustworthiness supported within
/// δᵢ of p̂ᵢ.
pub fn soo_bound_strong(trust: &ProbabilityVector, deltas: &[f64]) -> Result<f64> {
    check_deltas(trust, deltas)?;
    Ok(strong_from_omega(omega_at_trust(trust)?, trust.values(), deltas))
}

/// Sum-form bound on the SoO; never smaller than [`soo_bound_strong`].
pub fn soo_bound_weak(trust: &ProbabilityVector, deltas: &[f64]) -> Result<f64> {
    check_deltas(trust, deltas)?;
    Ok(weak_from_omega(omega_at_trust(trust)?, trust.values(), deltas))
}

/// Both bounds, sharing one evaluation of ω(p̂).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SooBounds {
    pub deltas: Vec<f64>,
    pub strong: f64,
    pub weak: f64,
}

impl SooBounds {
    pub fn compute(trust: &ProbabilityVector, deltas: &[f64]) -> Result<Self> {
        check_deltas(trust, deltas)?;
        let omega = omega_at_trust(trust)?;
        Ok(Self::from_omega(omega, trust.values(), deltas))
    }

    pub(crate) fn from_omega(omega: f64, trust: &[f64], deltas: &[f64]) -> Self {
        Self {
            deltas: deltas.to_vec(),
            strong: strong_from_omega(omega, trust, deltas),
            weak: weak_from_omega(omega, trust, deltas),
        }
    }
}

/// Axis-aligned box `[a₁, b₁] × … × [aₙ, bₙ]` inside the unit cube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypercube {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Hypercube {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(WmvError::Empty { field: "hypercube" });
        }
        if lower.len() != upper.len() {
            return Err(WmvError::LengthMismatch {
                field: "upper",
                expected: lower.len(),
                found: upper.len(),
            });
        }
        for (index, (&a, &b)) in lower.iter().zip(&upper).enumerate() {
            if !(0.0..=1.0).contains(&a) {
                return Err(WmvError::Domain {
                    field: "lower",
                    index,
                    value: a,
                    expected: "[0, 1]",
                });
            }
            if !(a..=1.0).contains(&b) {
                return Err(WmvError::Domain {
                    field: "upper",
                    index,
                    value: b,
                    expected: "[lower, 1]",
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The box `[pᵢ − δᵢ, pᵢ + δᵢ]`.
    pub fn around(center: &[f64], deltas: &[f64]) -> Result<Self> {
        if center.len() != deltas.len() {
            return Err(WmvError::LengthMismatch {
                field: "deltas",
                expected: center.len(),
                found: deltas.len(),
            });
        }
        Self::new(
            center.iter().zip(deltas).map(|(c, d)| c - d).collect(),
            center.iter().zip(deltas).map(|(c, d)| c + d).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    fn open_axes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i] > self.lower[i]).collect()
    }

    fn contains(&self, point: &[f64]) -> bool {
        point
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(&p, (&a, &b))| a <= p && p <= b)
    }
}

/// Visit every vertex of the box, passing the vertex and, for each open
/// axis, whether it sits at the upper end.
fn for_each_vertex(cube: &Hypercube, mut f: impl FnMut(&[f64], &[(usize, bool)]) -> Result<()>) -> Result<()> {
    let open = cube.open_axes();
    if open.len() > VERTEX_LIMIT {
        return Err(WmvError::Capacity {
            what: "hypercube vertex enumeration",
            n: open.len(),
            limit: VERTEX_LIMIT,
        });
    }
    let mut vertex = cube.lower.clone();
    let mut sides = Vec::with_capacity(open.len());
    for bits in 0u64..(1 << open.len()) {
        sides.clear();
        for (k, &i) in open.iter().enumerate() {
            let up = bits >> k & 1 == 1;
            vertex[i] = if up { cube.upper[i] } else { cube.lower[i] };
            sides.push((i, up));
        }
        f(&vertex, &sides)?;
    }
    Ok(())
}

fn check_inside(point: &ProbabilityVector, cube: &Hypercube) -> Result<()> {
    if point.len() != cube.len() {
        return Err(WmvError::LengthMismatch {
            field: "hypercube",
            expected: point.len(),
            found: cube.len(),
        });
    }
    if !cube.contains(point.values()) {
        return Err(WmvError::InvalidArgument(
            "point lies outside the hypercube".into(),
        ));
    }
    Ok(())
}

/// Upper bound on E(ω(P)) over all independent P with E(P) = `trust`
/// supported in `cube`: the revealed correctness averaged over the vertices
/// under the extreme two-point law on each axis.
///
/// The domination only holds for cubes inside [0.5, 1]^n. Lower faces below
/// 0.5 are accepted and evaluated, but the result may undercut E(ω(P)).
pub fn extreme_upper_bound(trust: &ProbabilityVector, cube: &Hypercube) -> Result<f64> {
    check_inside(trust, cube)?;
    let p = trust.values();
    let mut terms = Vec::new();
    for_each_vertex(cube, |vertex, sides| {
        let weight: f64 = sides
            .iter()
            .map(|&(i, up)| {
                let (a, b) = (cube.lower[i], cube.upper[i]);
                if up {
                    (p[i] - a) / (b - a)
                } else {
                    (b - p[i]) / (b - a)
                }
            })
            .product();
        if weight > 0.0 {
            terms.push(weight * revealed_correctness(vertex)?);
        }
        Ok(())
    })?;
    Ok(sum_descending(&mut terms))
}

/// Vertex bound written as a single normalized sum:
/// Σ_q ω(q) ∏_{qᵢ=aᵢ}(bᵢ − pᵢ) ∏_{qᵢ=bᵢ}(pᵢ − aᵢ) / ∏(bᵢ − aᵢ).
/// Degenerate axes contribute a factor of one. Like [`extreme_upper_bound`],
/// it dominates ω(p) only on cubes inside [0.5, 1]^n.
pub fn hypercube_vertex_bound(truth: &ProbabilityVector, cube: &Hypercube) -> Result<f64> {
    check_inside(truth, cube)?;
    let p = truth.values();
    let open = cube.open_axes();
    let volume: f64 = open.iter().map(|&i| cube.upper[i] - cube.lower[i]).product();
    let mut terms = Vec::new();
    for_each_vertex(cube, |vertex, sides| {
        let numerator: f64 = sides
            .iter()
            .map(|&(i, up)| if up { p[i] - cube.lower[i] } else { cube.upper[i] - p[i] })
            .product();
        terms.push(revealed_correctness(vertex)? * numerator);
        Ok(())
    })?;
    Ok(sum_descending(&mut terms) / volume)
}
