use std::path::PathBuf;

use wmv_core::sensitivity::{
    predict_breakpoints_identical, predict_breakpoints_single, surface_2d, sweep, sweep_identical, IdenticalGroupSpec,
    SweepMode,
};
use wmv_core::stability::{soc_gap, soo, Budget, Marginal, SooBounds, TrustworthinessDistribution, EXACT_SUPPORT_LIMIT};
use wmv_core::{simulate_correctness, DecisionSet, EstimateMode, ProbabilityVector};

use crate::config::{CommandKind, ExperimentConfig, GridSpec};
use crate::dist::parse_distribution;
use crate::error::{CliError, CliResult, Context};
use crate::presets;
use crate::table::{format_short, Cell, Table};

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub summary: String,
    pub files: Vec<PathBuf>,
}

fn trust(config: &ExperimentConfig) -> CliResult<ProbabilityVector> {
    if config.trust.is_empty() {
        return Err(CliError::invalid("trust", "required"));
    }
    ProbabilityVector::trust(config.trust.clone()).field("trust")
}

fn truth(config: &ExperimentConfig) -> CliResult<ProbabilityVector> {
    let values = config.truth.clone().unwrap_or_else(|| config.trust.clone());
    let p = ProbabilityVector::trustworthiness(values).field("truth")?;
    if p.len() != config.trust.len() {
        return Err(CliError::invalid(
            "truth",
            format!("has {} values but trust has {}", p.len(), config.trust.len()),
        ));
    }
    Ok(p)
}

fn index(config: &ExperimentConfig, pos: usize, n: usize) -> CliResult<usize> {
    let i = *config
        .indices
        .get(pos)
        .ok_or_else(|| CliError::invalid("index", "required"))?;
    if i == 0 || i > n {
        return Err(CliError::invalid("index", format!("{i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn default_grid(mode: SweepMode) -> GridSpec {
    match mode {
        SweepMode::TruthVarying => GridSpec::new(0.0, 1.0, presets::GRID_POINTS),
        _ => GridSpec::new(0.5, 1.0, presets::GRID_POINTS),
    }
}

/// Exact when asked or when the support is small, Monte Carlo when runs are given.
fn budget(config: &ExperimentConfig, dist: &TrustworthinessDistribution) -> CliResult<Budget> {
    if config.exact {
        return Ok(Budget::Exact);
    }
    if let (Some(runs), Some(seed)) = (config.runs, config.seed) {
        return Ok(Budget::MonteCarlo { runs, seed });
    }
    match dist.support_size() {
        Some(s) if s <= EXACT_SUPPORT_LIMIT => Ok(Budget::Exact),
        _ => Err(CliError::invalid(
            "runs",
            "continuous or large distributions need --runs and --seed",
        )),
    }
}

fn distribution(config: &ExperimentConfig, means: &[f64]) -> CliResult<TrustworthinessDistribution> {
    let spec = config
        .dist
        .as_deref()
        .ok_or_else(|| CliError::invalid("dist", "required"))?;
    parse_distribution(spec, means)
}

fn deltas(config: &ExperimentConfig, n: usize) -> CliResult<Vec<f64>> {
    match config.delta.as_deref() {
        None => Err(CliError::invalid("delta", "required")),
        Some([d]) => Ok(vec![*d; n]),
        Some(ds) if ds.len() == n => Ok(ds.to_vec()),
        Some(ds) => Err(CliError::invalid("delta", format!("{} values for {n} sources", ds.len()))),
    }
}

fn mode_name(mode: EstimateMode) -> &'static str {
    match mode {
        EstimateMode::Exact => "exact",
        EstimateMode::MonteCarlo { .. } => "monte_carlo",
    }
}

pub(crate) fn sweep_table(grid: &[f64], values: &[f64]) -> Table {
    let mut t = Table::new(&["x", "omega"]);
    for (x, v) in grid.iter().zip(values) {
        t.push(vec![(*x).into(), (*v).into()]);
    }
    t
}

pub(crate) fn surface_table(s: &wmv_core::sensitivity::Surface) -> Table {
    let mut t = Table::new(&["x", "y", "omega"]);
    for (r, x) in s.grid_i.iter().enumerate() {
        for (c, y) in s.grid_j.iter().enumerate() {
            t.push(vec![(*x).into(), (*y).into(), s.get(r, c).into()]);
        }
    }
    t
}

pub(crate) fn bounds_row(param: f64, soo: Option<f64>, b: &SooBounds) -> Vec<Cell> {
    vec![param.into(), soo.into(), b.strong.into(), b.weak.into()]
}

pub const BOUNDS_HEADER: [&str; 4] = ["param", "soo", "bound_strong", "bound_weak"];

fn correctness_cmd(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    let t = trust(config)?;
    let p = truth(config)?;
    let set = DecisionSet::build(&t).field("trust")?;
    let omega = set.mass(p.values());
    let mut summary = format!("omega={} ties={}", format_short(omega), set.tie_count());
    let mut table = Table::new(&["omega", "tie_count", "estimate", "stderr", "runs"]);
    let mut row: Vec<Cell> = vec![omega.into(), set.tie_count().into()];
    match (config.runs, config.seed) {
        (Some(runs), Some(seed)) => {
            let est = simulate_correctness(&t, &p, runs, seed).field("runs")?;
            summary.push_str(&format!(
                " estimate={} stderr={} runs={runs}",
                format_short(est.value),
                format_short(est.stderr)
            ));
            row.extend([est.value.into(), est.stderr.into(), runs.into()]);
        }
        _ => row.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
    }
    table.push(row);
    Ok((summary, table))
}

fn sweep_cmd(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    let mode = config.mode.unwrap_or(SweepMode::Direct);
    let grid = config.grid.unwrap_or_else(|| default_grid(mode)).values()?;
    let result = match config.identical {
        Some(m) => {
            if mode != SweepMode::Direct {
                return Err(CliError::invalid("mode", "identical groups support the direct mode only"));
            }
            let spec = IdenticalGroupSpec::new(m, grid, config.trust.clone()).field("identical")?;
            sweep_identical(&spec, mode).field("grid")?
        }
        None => {
            let t = trust(config)?;
            let p = truth(config)?;
            let i = index(config, 0, t.len())?;
            sweep(&t, &p, mode, i, &grid).field("grid")?
        }
    };
    let max = result.values.iter().copied().fold(f64::MIN, f64::max);
    let min = result.values.iter().copied().fold(f64::MAX, f64::min);
    let mut summary = format!(
        "mode={} points={} min={} max={}",
        mode.name(),
        result.grid.len(),
        format_short(min),
        format_short(max)
    );
    if let Some(b) = &result.breakpoints {
        summary.push_str(&format!(" breakpoints={}", b.len()));
    }
    Ok((summary, sweep_table(&result.grid, &result.values)))
}

fn surface_cmd(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    let t = trust(config)?;
    let p = truth(config)?;
    let mode = config.mode.unwrap_or(SweepMode::Direct);
    let i = index(config, 0, t.len())?;
    let j = index(config, 1, t.len())?;
    let g1 = config.grid.unwrap_or_else(|| default_grid(mode));
    let g2 = config.grid2.unwrap_or(g1);
    let s = surface_2d(&t, &p, mode, i, j, &g1.values()?, &g2.values()?).field("grid")?;
    let (mut best, mut at) = (f64::MIN, (0.0, 0.0));
    for (r, x) in s.grid_i.iter().enumerate() {
        for (c, y) in s.grid_j.iter().enumerate() {
            if s.get(r, c) > best {
                best = s.get(r, c);
                at = (*x, *y);
            }
        }
    }
    let summary = format!(
        "mode={} rows={} cols={} max={} at=({},{})",
        mode.name(),
        s.rows(),
        s.cols(),
        format_short(best),
        format_short(at.0),
        format_short(at.1)
    );
    Ok((summary, surface_table(&s)))
}

fn soc_cmd(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    let t = trust(config)?;
    let dist = distribution(config, t.values())?;
    let b = budget(config, &dist)?;
    let gap = soc_gap(&t, &dist, b).field("dist")?;
    let mut table = Table::new(&["gap", "stderr", "mode", "runs"]);
    table.push(vec![gap.value.into(), gap.stderr.into(), mode_name(gap.mode).into(), gap.runs().into()]);
    let summary = format!(
        "gap={} stderr={} mode={} runs={}",
        format_short(gap.value),
        format_short(gap.stderr),
        mode_name(gap.mode),
        gap.runs()
    );
    Ok((summary, table))
}

fn soo_cmd(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    let t = trust(config)?;
    let dist = distribution(config, t.values())?;
    let b = budget(config, &dist)?;
    let r = soo(&t, &dist, b).field("dist")?;
    let mut table = Table::new(&[
        "omega_trust",
        "e_omega_mixed",
        "e_omega_revealed",
        "soc_gap",
        "soo",
        "bound_strong",
        "bound_weak",
        "mode",
        "runs",
        "stderr_mixed",
        "stderr_revealed",
        "stderr_soo",
    ]);
    table.push(vec![
        r.omega_trust.into(),
        r.e_omega_mixed.into(),
        r.e_omega_revealed.into(),
        r.soc_gap.into(),
        r.soo.into(),
        r.bound_strong.into(),
        r.bound_weak.into(),
        mode_name(r.mode).into(),
        r.runs.into(),
        r.standard_errors.e_omega_mixed.into(),
        r.standard_errors.e_omega_revealed.into(),
        r.standard_errors.soo.into(),
    ]);
    let bounds = match (r.bound_strong, r.bound_weak) {
        (Some(s), Some(w)) => format!("strong={} weak={}", format_short(s), format_short(w)),
        _ => "bounds=n/a".to_string(),
    };
    let summary = format!(
        "soo={} stderr={} {bounds} mode={}",
        format_short(r.soo),
        format_short(r.standard_errors.soo),
        mode_name(r.mode)
    );
    Ok((summary, table))
}

fn bounds_cmd(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    let t = trust(config)?;
    let d = deltas(config, t.len())?;
    let b = SooBounds::compute(&t, &d).field("delta")?;
    let dist = TrustworthinessDistribution::new(
        t.values()
            .iter()
            .zip(&d)
            .map(|(&m, &delta)| Marginal::extreme_symmetric(m, delta))
            .collect(),
    )
    .field("delta")?;
    let soo_value = match dist.support_size() {
        Some(s) if s <= EXACT_SUPPORT_LIMIT => Some(soo(&t, &dist, Budget::Exact).field("delta")?.soo),
        _ => None,
    };
    let param = d.iter().copied().fold(0.0, f64::max);
    let mut table = Table::new(&BOUNDS_HEADER);
    table.push(bounds_row(param, soo_value, &b));
    let mut summary = format!("strong={} weak={}", format_short(b.strong), format_short(b.weak));
    if let Some(s) = soo_value {
        summary.push_str(&format!(" soo={}", format_short(s)));
    }
    Ok((summary, table))
}

fn breakpoints_cmd(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    let points = match config.identical {
        Some(m) => {
            let spec = IdenticalGroupSpec::new(m, Vec::new(), config.trust.clone()).field("identical")?;
            predict_breakpoints_identical(&spec).field("identical")?
        }
        None => {
            let t = trust(config)?;
            let i = index(config, 0, t.len())?;
            predict_breakpoints_single(&t, i).field("trust")?
        }
    };
    let mut table = Table::new(&["breakpoint"]);
    for &b in &points {
        table.push(vec![b.into()]);
    }
    let listed: Vec<String> = points.iter().map(|&b| format_short(b)).collect();
    Ok((format!("count={} breakpoints=[{}]", points.len(), listed.join(",")), table))
}

/// Compute a non-figure command without touching the file system.
pub fn compute(config: &ExperimentConfig) -> CliResult<(String, Table)> {
    config.validate()?;
    match config.command {
        CommandKind::Correctness => correctness_cmd(config),
        CommandKind::Sweep => sweep_cmd(config),
        CommandKind::Surface => surface_cmd(config),
        CommandKind::Soc => soc_cmd(config),
        CommandKind::Soo => soo_cmd(config),
        CommandKind::Bounds => bounds_cmd(config),
        CommandKind::Breakpoints => breakpoints_cmd(config),
        CommandKind::Figure => Err(CliError::invalid("command", "figure writes several files; use run")),
    }
}

/// Run a config: compute, write the data file(s) and return the summary.
pub fn run(config: &ExperimentConfig) -> CliResult<Outcome> {
    config.validate()?;
    if config.command == CommandKind::Figure {
        let id = config
            .preset
            .as_deref()
            .ok_or_else(|| CliError::invalid("preset", "required"))?;
        let data = presets::build_figure(id, config.seed, config.runs)?;
        let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
        let files = presets::write_figure(&data, &dir, config.format)?;
        return Ok(Outcome {
            summary: format!("preset={id} files={} dir={}", files.len(), dir.display()),
            files,
        });
    }
    let (summary, table) = compute(config)?;
    let mut files = Vec::new();
    if let Some(path) = &config.out {
        table.write(path, config.format)?;
        files.push(path.clone());
    }
    Ok(Outcome { summary, files })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(kind: CommandKind, trust: &[f64]) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(kind);
        c.trust = trust.to_vec();
        c
    }

    #[test]
    fn running_example_summary() {
        let (s, t) = compute(&config(CommandKind::Correctness, &[0.8, 0.75, 0.7, 0.6])).unwrap();
        assert!(s.starts_with("omega=0.845 "), "{s}");
        assert_eq!(t.rows.len(), 1);
    }

    #[test]
    fn soc_exact_gap_is_zero() {
        let mut c = config(CommandKind::Soc, &[0.7, 0.7, 0.7]);
        c.dist = Some("extreme:delta=0.1".into());
        c.exact = true;
        let (s, _) = compute(&c).unwrap();
        assert!(s.starts_with("gap=0 "), "{s}");
    }

    #[test]
    fn bounds_summary() {
        let mut c = config(CommandKind::Bounds, &[0.8, 0.75, 0.7, 0.6]);
        c.delta = Some(vec![0.05]);
        let (s, t) = compute(&c).unwrap();
        assert!(s.starts_with("strong=0.05010253906"), "{s}");
        assert!(s.contains(" weak=0.057479166667 soo=0.0064453125"), "{s}");
        assert_eq!(t.header, BOUNDS_HEADER);
    }

    #[test]
    fn continuous_without_runs_is_rejected() {
        let mut c = config(CommandKind::Soo, &[0.7, 0.8]);
        c.dist = Some("beta:var=0.01".into());
        let err = compute(&c).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn capacity_maps_to_exit_two() {
        let c = config(CommandKind::Correctness, &[0.7; 25]);
        assert_eq!(compute(&c).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn identical_sweep_without_trust() {
        let mut c = config(CommandKind::Sweep, &[]);
        c.identical = Some(3);
        c.grid = Some(GridSpec::new(0.5, 1.0, 11));
        let (_, t) = compute(&c).unwrap();
        assert_eq!(t.rows.len(), 11);
    }

    #[test]
    fn index_out_of_range() {
        let mut c = config(CommandKind::Sweep, &[0.7, 0.8]);
        c.indices = vec![3];
        assert!(matches!(compute(&c), Err(CliError::Validation { ref field, .. }) if field == "index"));
    }
}
