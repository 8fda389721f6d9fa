use serde::{Deserialize, Serialize};

use crate::error::{Result, WmvError};

/// Which side of the model a probability vector describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// The decision maker's estimate, used to derive voting weights. Values in [0.5, 1].
    Trust,
    /// The true probability that a source reports the correct option. Values in [0, 1].
    Trustworthiness,
}

impl Role {
    pub fn lower_bound(self) -> f64 {
        match self {
            Role::Trust => 0.5,
            Role::Trustworthiness => 0.0,
        }
    }

    fn range_label(self) -> &'static str {
        match self {
            Role::Trust => "[0.5, 1]",
            Role::Trustworthiness => "[0, 1]",
        }
    }

    fn field(self) -> &'static str {
        match self {
            Role::Trust => "trust",
            Role::Trustworthiness => "truth",
        }
    }

    pub fn admits(self, value: f64) -> bool {
        value.is_finite() && value >= self.lower_bound() && value <= 1.0
    }
}

/// Per-source probabilities with a role-specific range invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityVector {
    values: Vec<f64>,
    role: Role,
}

impl ProbabilityVector {
    pub fn new(values: Vec<f64>, role: Role) -> Result<Self> {
        if values.is_empty() {
            return Err(WmvError::Empty { field: role.field() });
        }
        for (index, &value) in values.iter().enumerate() {
            if !role.admits(value) {
                return Err(WmvError::Domain {
                    field: role.field(),
                    index,
                    value,
                    expected: role.range_label(),
                });
            }
        }
        Ok(Self { values, role })
    }

    pub fn trust(values: impl Into<Vec<f64>>) -> Result<Self> {
        Self::new(values.into(), Role::Trust)
    }

    pub fn trustworthiness(values: impl Into<Vec<f64>>) -> Result<Self> {
        Self::new(values.into(), Role::Trustworthiness)
    }

    /// Trust derived from trustworthiness by clamping every value into [0.5, 1].
    ///
    /// This is how revealed trustworthiness below one half is turned into
    /// weights: such a source gets zero weight.
    pub fn clamped_trust(values: &[f64]) -> Result<Self> {
        let truth = Self::trustworthiness(values.to_vec())?;
        Ok(Self {
            values: truth.values.iter().map(|v| v.max(0.5)).collect(),
            role: Role::Trust,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.values.get(index).copied()
    }

    /// Copy with coordinate `index` replaced, re-validated for the same role.
    pub fn with_value(&self, index: usize, value: f64) -> Result<Self> {
        if index >= self.len() {
            return Err(WmvError::IndexOutOfRange {
                index,
                n: self.len(),
            });
        }
        let mut values = self.values.clone();
        values[index] = value;
        Self::new(values, self.role)
    }

    /// Same values reinterpreted under another role.
    pub fn with_role(&self, role: Role) -> Result<Self> {
        Self::new(self.values.clone(), role)
    }

    pub(crate) fn check_len(&self, other: &ProbabilityVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(WmvError::LengthMismatch {
                field: other.role.field(),
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

impl AsRef<[f64]> for ProbabilityVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}
