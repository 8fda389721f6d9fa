//! Data behind each figure, with the parameters baked in.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use wmv_core::sensitivity::{linspace, surface_2d, sweep, sweep_identical, IdenticalGroupSpec, SweepMode};
use wmv_core::stability::{
    expected_correctness_fixed_trust, expected_correctness_fixed_truth, soo, Budget, Marginal, SooBounds,
    TrustworthinessDistribution,
};
use wmv_core::{correctness, Estimate, ProbabilityVector};

use crate::commands::{bounds_row, surface_table, sweep_table, BOUNDS_HEADER};
use crate::config::Format;
use crate::error::{CliError, CliResult, Context};
use crate::table::{write_file, Table};

pub const GRID_POINTS: usize = 201;
pub const RUNNING_EXAMPLE: [f64; 4] = [0.8, 0.75, 0.7, 0.6];
pub const DEFAULT_RUNS: u64 = 100_000;
pub const DEFAULT_DELTA: f64 = 0.05;
pub const VARIANCE_POINTS: usize = 21;
pub const VARIANCE_RANGE: (f64, f64) = (1e-4, 1e-1);

pub const PRESETS: [&str; 15] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig7a",
    "fig7b", "fig7c", "fig7d",
];

pub const MC_HEADER: [&str; 4] = ["x", "estimate", "stderr", "runs"];

/// Files (by stem) and metadata for one preset.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub preset: String,
    pub files: Vec<(String, Table)>,
    pub meta: Value,
}

/// `points` log-spaced values from `lo` to `hi`.
pub fn variance_grid() -> Vec<f64> {
    let (lo, hi) = VARIANCE_RANGE;
    let (a, b) = (lo.log10(), hi.log10());
    (0..VARIANCE_POINTS)
        .map(|k| 10f64.powf(a + (b - a) * k as f64 / (VARIANCE_POINTS - 1) as f64))
        .collect()
}

fn unit_grid(min: f64, max: f64) -> Vec<f64> {
    linspace(min, max, GRID_POINTS).expect("static grid")
}

fn running() -> ProbabilityVector {
    ProbabilityVector::trust(RUNNING_EXAMPLE.to_vec()).expect("static vector")
}

fn running_truth() -> ProbabilityVector {
    ProbabilityVector::trustworthiness(RUNNING_EXAMPLE.to_vec()).expect("static vector")
}

fn mc_table(xs: &[f64], estimates: &[Estimate]) -> Table {
    let mut t = Table::new(&MC_HEADER);
    for (x, e) in xs.iter().zip(estimates) {
        t.push(vec![(*x).into(), e.value.into(), e.stderr.into(), e.runs().into()]);
    }
    t
}

fn constant_table(xs: &[f64], value: f64) -> Table {
    mc_table(xs, &vec![Estimate::exact(value); xs.len()])
}

fn per_source_sweeps(id: &str, mode: SweepMode, grid: &[f64]) -> CliResult<Vec<(String, Table)>> {
    (0..RUNNING_EXAMPLE.len())
        .map(|i| {
            let r = sweep(&running(), &running_truth(), mode, i, grid).field("preset")?;
            Ok((format!("{id}_p{}", i + 1), sweep_table(&r.grid, &r.values)))
        })
        .collect()
}

fn running_surface(mode: SweepMode, grid: &[f64]) -> CliResult<Table> {
    let s = surface_2d(&running(), &running_truth(), mode, 0, 1, grid, grid).field("preset")?;
    Ok(surface_table(&s))
}

fn sensitivity_meta(id: &str, mode: SweepMode, grid: &[f64]) -> Value {
    json!({
        "preset": id,
        "mode": mode.name(),
        "base": RUNNING_EXAMPLE,
        "grid": {"min": grid[0], "max": grid[grid.len() - 1], "points": grid.len()},
    })
}

fn require_seed(id: &str, seed: Option<u64>) -> CliResult<u64> {
    seed.ok_or_else(|| CliError::invalid("seed", format!("preset {id} uses Monte Carlo and needs --seed")))
}

fn mc_meta(id: &str, description: &str, runs: u64, seed: u64) -> Value {
    json!({
        "preset": id,
        "description": description,
        "base": RUNNING_EXAMPLE,
        "runs": runs,
        "seed": seed,
        "variance_grid": {
            "spacing": "log",
            "min": VARIANCE_RANGE.0,
            "max": VARIANCE_RANGE.1,
            "points": VARIANCE_POINTS,
        },
        "truncation": "symmetric about the mean, half-width min(mean - 0.5, 1 - mean)",
    })
}

/// SoO and both bounds for exact symmetric two-point marginals.
fn soo_with_bounds(means: &[f64], deltas: &[f64]) -> CliResult<(f64, SooBounds)> {
    let t = ProbabilityVector::trust(means.to_vec()).field("preset")?;
    let dist = TrustworthinessDistribution::new(
        means
            .iter()
            .zip(deltas)
            .map(|(&m, &d)| Marginal::extreme_symmetric(m, d))
            .collect(),
    )
    .field("preset")?;
    let report = soo(&t, &dist, Budget::Exact).field("preset")?;
    let b = SooBounds::compute(&t, deltas).field("preset")?;
    Ok((report.soo, b))
}

fn bounds_table(rows: impl IntoIterator<Item = CliResult<(f64, f64, SooBounds)>>) -> CliResult<Table> {
    let mut t = Table::new(&BOUNDS_HEADER);
    for row in rows {
        let (param, s, b) = row?;
        t.push(bounds_row(param, Some(s), &b));
    }
    Ok(t)
}

/// Compute every series of a preset. `runs` overrides the Monte Carlo budget.
pub fn build_figure(id: &str, seed: Option<u64>, runs: Option<u64>) -> CliResult<FigureData> {
    let runs = runs.unwrap_or(DEFAULT_RUNS);
    let upper = unit_grid(0.5, 1.0);
    let full = unit_grid(0.0, 1.0);
    let (files, meta) = match id {
        "fig1a" => (
            per_source_sweeps(id, SweepMode::Direct, &upper)?,
            sensitivity_meta(id, SweepMode::Direct, &upper),
        ),
        "fig1b" => (
            vec![(id.to_string(), running_surface(SweepMode::Direct, &upper)?)],
            sensitivity_meta(id, SweepMode::Direct, &upper),
        ),
        "fig3a" => (
            per_source_sweeps(id, SweepMode::TruthVarying, &full)?,
            sensitivity_meta(id, SweepMode::TruthVarying, &full),
        ),
        "fig3b" => (
            vec![(id.to_string(), running_surface(SweepMode::TruthVarying, &full)?)],
            sensitivity_meta(id, SweepMode::TruthVarying, &full),
        ),
        "fig4a" => (
            per_source_sweeps(id, SweepMode::TrustVarying, &upper)?,
            sensitivity_meta(id, SweepMode::TrustVarying, &upper),
        ),
        "fig4b" => (
            vec![(id.to_string(), running_surface(SweepMode::TrustVarying, &upper)?)],
            sensitivity_meta(id, SweepMode::TrustVarying, &upper),
        ),
        "fig2a" => {
            let files = (1..=6usize)
                .map(|m| {
                    let spec = IdenticalGroupSpec::new(m, upper.clone(), vec![0.7, 0.7]).field("preset")?;
                    let r = sweep_identical(&spec, SweepMode::Direct).field("preset")?;
                    Ok((format!("{id}_m{m}"), sweep_table(&r.grid, &r.values)))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let meta = json!({"preset": id, "rest_p": [0.7, 0.7], "m": [1, 2, 3, 4, 5, 6], "grid_points": GRID_POINTS});
            (files, meta)
        }
        "fig2b" => {
            let mut t = Table::new(&["x", "y", "omega"]);
            for &p in &upper {
                for &rest in &upper {
                    let mut v = vec![p; 6];
                    v.extend([rest; 4]);
                    let w = correctness(
                        &ProbabilityVector::trust(v.clone()).field("preset")?,
                        &ProbabilityVector::trustworthiness(v).field("preset")?,
                    )
                    .field("preset")?;
                    t.push(vec![p.into(), rest.into(), w.into()]);
                }
            }
            let meta = json!({
                "preset": id, "n": 10, "m": 6,
                "x": "shared value of the 6 identical sources",
                "y": "shared value rest_p of the 4 remaining sources",
                "grid_points": GRID_POINTS,
            });
            (vec![(id.to_string(), t)], meta)
        }
        "fig5a" => {
            let seed = require_seed(id, seed)?;
            let xs = variance_grid();
            let t = running();
            let omega = correctness(&t, &running_truth()).field("preset")?;
            let budget = Budget::MonteCarlo { runs, seed };
            let mut normal = Vec::new();
            let mut beta = Vec::new();
            for &v in &xs {
                let d = TrustworthinessDistribution::from_means(&RUNNING_EXAMPLE, |m| {
                    Marginal::trunc_normal(m, v.sqrt(), None)
                })
                .field("preset")?;
                normal.push(expected_correctness_fixed_trust(&t, &d, budget).field("preset")?);
                let d = TrustworthinessDistribution::from_means(&RUNNING_EXAMPLE, |m| Marginal::beta(m, v))
                    .field("preset")?;
                beta.push(expected_correctness_fixed_trust(&t, &d, budget).field("preset")?);
            }
            let files = vec![
                (format!("{id}_believed"), constant_table(&xs, omega)),
                (format!("{id}_truncnormal"), mc_table(&xs, &normal)),
                (format!("{id}_beta"), mc_table(&xs, &beta)),
            ];
            let meta = mc_meta(id, "trust fixed, trustworthiness random with mean equal to trust", runs, seed);
            (files, meta)
        }
        "fig5b" => {
            let seed = require_seed(id, seed)?;
            let xs = variance_grid();
            let p = running_truth();
            let omega = correctness(&running(), &p).field("preset")?;
            let budget = Budget::MonteCarlo { runs, seed };
            let mut achieved = Vec::new();
            for &v in &xs {
                let d = TrustworthinessDistribution::from_means(&RUNNING_EXAMPLE, |m| {
                    Marginal::trunc_normal(m, v.sqrt(), None)
                })
                .field("preset")?;
                achieved.push(expected_correctness_fixed_truth(&p, &d, budget).field("preset")?);
            }
            let files = vec![
                (format!("{id}_optimal"), constant_table(&xs, omega)),
                (format!("{id}_truncnormal"), mc_table(&xs, &achieved)),
            ];
            let meta = mc_meta(id, "trustworthiness fixed, trust random around it", runs, seed);
            (files, meta)
        }
        "fig6a" => {
            let seed = require_seed(id, seed)?;
            let xs = variance_grid();
            let t = running();
            let budget = Budget::MonteCarlo { runs, seed };
            let mut revealed = Vec::new();
            let mut gaps = Vec::new();
            let mut omega = 0.0;
            for &v in &xs {
                let d = TrustworthinessDistribution::from_means(&RUNNING_EXAMPLE, |m| Marginal::beta(m, v))
                    .field("preset")?;
                let r = soo(&t, &d, budget).field("preset")?;
                omega = r.omega_trust;
                let mode = r.mode;
                revealed.push(Estimate {
                    value: r.e_omega_revealed,
                    stderr: r.standard_errors.e_omega_revealed,
                    mode,
                });
                gaps.push(Estimate {
                    value: r.soo,
                    stderr: r.standard_errors.soo,
                    mode,
                });
            }
            let files = vec![
                (format!("{id}_believed"), constant_table(&xs, omega)),
                (format!("{id}_revealed"), mc_table(&xs, &revealed)),
                (format!("{id}_soo"), mc_table(&xs, &gaps)),
            ];
            let meta = mc_meta(id, "trust fixed, trustworthiness Beta with mean equal to trust", runs, seed);
            (files, meta)
        }
        "fig7a" => {
            let deltas = linspace(0.0, 0.2, GRID_POINTS).expect("static grid");
            let table = bounds_table(deltas.iter().map(|&d| {
                let (s, b) = soo_with_bounds(&RUNNING_EXAMPLE, &[d; 4])?;
                Ok((d, s, b))
            }))?;
            let meta = json!({"preset": id, "param": "delta (all sources)", "base": RUNNING_EXAMPLE,
                "delta": {"min": 0.0, "max": 0.2, "points": GRID_POINTS}});
            (vec![(id.to_string(), table)], meta)
        }
        "fig7b" => {
            let table = bounds_table((1..=10usize).map(|n| {
                let (s, b) = soo_with_bounds(&vec![0.7; n], &vec![DEFAULT_DELTA; n])?;
                Ok((n as f64, s, b))
            }))?;
            let meta = json!({"preset": id, "param": "number of identical sources n", "trust": 0.7, "delta": DEFAULT_DELTA});
            (vec![(id.to_string(), table)], meta)
        }
        "fig7c" => {
            let grid = linspace(0.5, 0.95, GRID_POINTS).expect("static grid");
            let table = bounds_table(grid.iter().map(|&p1| {
                let mut means = RUNNING_EXAMPLE;
                means[0] = p1;
                let (s, b) = soo_with_bounds(&means, &[DEFAULT_DELTA; 4])?;
                Ok((p1, s, b))
            }))?;
            let meta = json!({"preset": id, "param": "trust of source 1", "base": RUNNING_EXAMPLE, "delta": DEFAULT_DELTA,
                "grid": {"min": 0.5, "max": 0.95, "points": GRID_POINTS}});
            (vec![(id.to_string(), table)], meta)
        }
        "fig7d" => {
            let table = bounds_table(upper.iter().map(|&p| {
                let d = DEFAULT_DELTA.min(1.0 - p);
                let (s, b) = soo_with_bounds(&[p; 4], &[d; 4])?;
                Ok((p, s, b))
            }))?;
            let meta = json!({"preset": id, "param": "shared trust of 4 identical sources",
                "delta": "min(0.05, 1 - trust)", "grid_points": GRID_POINTS});
            (vec![(id.to_string(), table)], meta)
        }
        other => {
            return Err(CliError::invalid(
                "preset",
                format!("unknown preset {other:?}; expected one of {}", PRESETS.join(", ")),
            ))
        }
    };
    Ok(FigureData {
        preset: id.to_string(),
        files,
        meta,
    })
}

/// Write each series as `<stem>.<ext>` and the metadata as `<preset>.meta.json`.
pub fn write_figure(data: &FigureData, dir: &Path, format: Format) -> CliResult<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut listing = Vec::new();
    for (stem, table) in &data.files {
        let path = dir.join(format!("{stem}.{}", format.extension()));
        table.write(&path, format)?;
        listing.push(json!({"file": format!("{stem}.{}", format.extension()), "columns": table.header}));
        written.push(path);
    }
    let mut meta = data.meta.clone();
    meta["files"] = Value::Array(listing);
    let path = dir.join(format!("{}.meta.json", data.preset));
    let mut text = serde_json::to_string_pretty(&meta).expect("json");
    text.push('\n');
    write_file(&path, text.as_bytes())?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variance_grid_is_log_spaced() {
        let g = variance_grid();
        assert_eq!(g.len(), VARIANCE_POINTS);
        assert!((g[0] - 1e-4).abs() < 1e-18 && (g[20] - 1e-1).abs() < 1e-15);
        let r = g[1] / g[0];
        assert!(g.windows(2).all(|w| (w[1] / w[0] - r).abs() < 1e-9));
    }

    #[test]
    fn staircase_preset_peaks_at_true_value() {
        let data = build_figure("fig4a", None, None).unwrap();
        let (_, t) = &data.files[0];
        let value = |row: &Vec<crate::table::Cell>, k: usize| match row[k] {
            crate::table::Cell::Num(x) => x,
            _ => unreachable!(),
        };
        let max = t.rows.iter().map(|r| value(r, 1)).fold(f64::MIN, f64::max);
        let at_true = t.rows.iter().find(|r| (value(r, 0) - 0.8).abs() < 1e-12).unwrap();
        assert!((value(at_true, 1) - max).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_presets_need_a_seed() {
        assert!(build_figure("fig5a", None, Some(10)).is_err());
        assert!(build_figure("fig9z", Some(1), None).is_err());
    }

    #[test]
    fn identical_bounds_preset_is_ordered() {
        let data = build_figure("fig7b", None, None).unwrap();
        for row in &data.files[0].1.rows {
            let v: Vec<f64> = row
                .iter()
                .map(|c| match c {
                    crate::table::Cell::Num(x) => *x,
                    _ => unreachable!(),
                })
                .collect();
            assert!(v[1] <= v[2] + 1e-12 && v[2] <= v[3] + 1e-12, "{v:?}");
        }
    }
}
