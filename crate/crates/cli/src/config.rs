use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use wmv_core::sensitivity::{linspace, SweepMode};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Correctness,
    Sweep,
    Surface,
    Soc,
    Soo,
    Bounds,
    Breakpoints,
    Figure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Evenly spaced grid written `min,max,points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points }
    }

    pub fn values(&self) -> CliResult<Vec<f64>> {
        if self.points == 1 && self.min == self.max {
            return Ok(vec![self.min]);
        }
        linspace(self.min, self.max, self.points).map_err(|e| CliError::invalid("grid", e))
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected min,max,points, got {s:?}"));
        }
        let num = |v: &str| v.parse::<f64>().map_err(|_| format!("{v:?} is not a number"));
        let points = parts[2]
            .parse::<usize>()
            .map_err(|_| format!("{:?} is not a point count", parts[2]))?;
        Ok(Self::new(num(parts[0])?, num(parts[1])?, points))
    }
}

/// Everything needed to reproduce one run. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    #[serde(default)]
    pub trust: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<SweepMode>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid2: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identical: Option<usize>,
    #[serde(default)]
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            trust: Vec::new(),
            truth: None,
            mode: None,
            indices: Vec::new(),
            grid: None,
            grid2: None,
            dist: None,
            delta: None,
            identical: None,
            exact: false,
            runs: None,
            seed: None,
            preset: None,
            out: None,
            format: Format::Csv,
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::invalid("config", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks that do not depend on the command's semantics.
    pub fn validate(&self) -> CliResult<()> {
        if self.runs.is_some_and(|r| r > 0) && self.seed.is_none() {
            return Err(CliError::invalid("seed", "required whenever runs > 0"));
        }
        if self.runs == Some(0) {
            return Err(CliError::invalid("runs", "must be at least 1"));
        }
        if self.exact && self.runs.is_some() {
            return Err(CliError::invalid("exact", "cannot be combined with runs"));
        }
        for (name, g) in [("grid", &self.grid), ("grid2", &self.grid2)] {
            if let Some(g) = g {
                if g.points < 2 && !(g.points == 1 && g.min == g.max) {
                    return Err(CliError::invalid(name, "needs at least 2 points"));
                }
            }
        }
        if self.indices.contains(&0) {
            return Err(CliError::invalid("index", "indices are 1-based"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!("0.5,1,201".parse::<GridSpec>().unwrap(), GridSpec::new(0.5, 1.0, 201));
        assert!("0.5,1".parse::<GridSpec>().is_err());
        assert!("a,1,3".parse::<GridSpec>().is_err());
    }

    #[test]
    fn seed_required_with_runs() {
        let mut c = ExperimentConfig::new(CommandKind::Soc);
        c.runs = Some(10);
        assert!(matches!(c.validate(), Err(CliError::Validation { ref field, .. }) if field == "seed"));
        c.seed = Some(1);
        c.validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let mut c = ExperimentConfig::new(CommandKind::Sweep);
        c.trust = vec![0.8, 0.75];
        c.mode = Some(SweepMode::TrustVarying);
        c.indices = vec![2];
        c.grid = Some(GridSpec::new(0.5, 1.0, 11));
        assert_eq!(ExperimentConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(ExperimentConfig::from_json(r#"{"command":"soc","trst":[0.7]}"#).is_err());
    }
}
