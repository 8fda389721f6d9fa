//! WebAssembly bindings for the interactive demo page in `www/`.
//!
//! Each export takes plain numbers and returns either a number or a JSON
//! string. The `api` module holds the same functions with `String` errors.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};
    use wmv_core::sensitivity::{linspace, surface_2d, sweep, SweepMode};
    use wmv_core::stability::{soo, Budget, Marginal, TrustworthinessDistribution};
    use wmv_core::{correctness, ProbabilityVector};

    pub type ApiResult<T> = Result<T, String>;

    pub const MAX_POINTS: usize = 401;

    fn trust_vector(values: &[f64]) -> ApiResult<ProbabilityVector> {
        ProbabilityVector::trust(values.to_vec()).map_err(|e| e.to_string())
    }

    fn truth_vector(values: &[f64]) -> ApiResult<ProbabilityVector> {
        ProbabilityVector::trustworthiness(values.to_vec()).map_err(|e| e.to_string())
    }

    fn truth_or_trust(trust: &[f64], truth: &[f64]) -> ApiResult<ProbabilityVector> {
        truth_vector(if truth.is_empty() { trust } else { truth })
    }

    fn mode(name: &str) -> ApiResult<SweepMode> {
        name.parse().map_err(|e: wmv_core::WmvError| e.to_string())
    }

    /// Grid for one axis: trust never leaves [0.5, 1], trustworthiness
    /// alone may range over [0, 1].
    fn axis(mode: SweepMode, points: usize) -> ApiResult<Vec<f64>> {
        if !(2..=MAX_POINTS).contains(&points) {
            return Err(format!("points must lie in 2..={MAX_POINTS}"));
        }
        let lo = if mode == SweepMode::TruthVarying { 0.0 } else { 0.5 };
        linspace(lo, 1.0, points).map_err(|e| e.to_string())
    }

    fn source(index: usize, n: usize) -> ApiResult<usize> {
        if index == 0 || index > n {
            Err(format!("source index {index} is outside 1..={n}"))
        } else {
            Ok(index - 1)
        }
    }

    /// ω(trust, truth); an empty `truth` means truth = trust.
    pub fn correctness_value(trust: &[f64], truth: &[f64]) -> ApiResult<f64> {
        correctness(&trust_vector(trust)?, &truth_or_trust(trust, truth)?).map_err(|e| e.to_string())
    }

    /// `{mode, index, x: [...], omega: [...], breakpoints: [...] | null}`
    pub fn sweep_json(trust: &[f64], truth: &[f64], mode_name: &str, index: usize, points: usize) -> ApiResult<String> {
        let m = mode(mode_name)?;
        let t = trust_vector(trust)?;
        let i = source(index, t.len())?;
        let r = sweep(&t, &truth_or_trust(trust, truth)?, m, i, &axis(m, points)?).map_err(|e| e.to_string())?;
        Ok(json!({
            "mode": m.name(),
            "index": index,
            "x": r.grid,
            "omega": r.values,
            "breakpoints": r.breakpoints,
        })
        .to_string())
    }

    /// `{x: [...], y: [...], omega: [[...]]}` with one row per x value.
    pub fn surface_json(
        trust: &[f64],
        truth: &[f64],
        mode_name: &str,
        index_x: usize,
        index_y: usize,
        points: usize,
    ) -> ApiResult<String> {
        let m = mode(mode_name)?;
        let t = trust_vector(trust)?;
        let (i, j) = (source(index_x, t.len())?, source(index_y, t.len())?);
        let grid = axis(m, points)?;
        let s = surface_2d(&t, &truth_or_trust(trust, truth)?, m, i, j, &grid, &grid).map_err(|e| e.to_string())?;
        let rows: Vec<Vec<f64>> = (0..s.rows()).map(|r| (0..s.cols()).map(|c| s.get(r, c)).collect()).collect();
        Ok(json!({ "mode": m.name(), "x": s.grid_i, "y": s.grid_j, "omega": rows }).to_string())
    }

    /// Exact stability report when each trustworthiness is p̂ᵢ ± δᵢ with
    /// probability one half. A single δ is shared by every source.
    pub fn soo_report_json(trust: &[f64], deltas: &[f64]) -> ApiResult<String> {
        let t = trust_vector(trust)?;
        let deltas: Vec<f64> = match deltas.len() {
            1 => vec![deltas[0]; t.len()],
            n if n == t.len() => deltas.to_vec(),
            n => return Err(format!("expected 1 or {} half-widths, got {n}", t.len())),
        };
        let dist = TrustworthinessDistribution::new(
            trust
                .iter()
                .zip(&deltas)
                .map(|(&p, &d)| Marginal::extreme_symmetric(p, d))
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let report = soo(&t, &dist, Budget::Exact).map_err(|e| e.to_string())?;
        let mut value: Value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        value["deltas"] = json!(deltas);
        Ok(value.to_string())
    }
}

fn js(e: String) -> JsError {
    JsError::new(&e)
}

/// Probability that weighted majority voting decides correctly.
#[wasm_bindgen]
pub fn correctness(trust: &[f64], truth: &[f64]) -> Result<f64, JsError> {
    api::correctness_value(trust, truth).map_err(js)
}

/// Correctness as source `index` (1-based) runs over its axis.
#[wasm_bindgen(js_name = sweepJson)]
pub fn sweep_json(trust: &[f64], truth: &[f64], mode: &str, index: usize, points: usize) -> Result<String, JsError> {
    api::sweep_json(trust, truth, mode, index, points).map_err(js)
}

/// Correctness over two sources' axes.
#[wasm_bindgen(js_name = surfaceJson)]
pub fn surface_json(
    trust: &[f64],
    truth: &[f64],
    mode: &str,
    index_x: usize,
    index_y: usize,
    points: usize,
) -> Result<String, JsError> {
    api::surface_json(trust, truth, mode, index_x, index_y, points).map_err(js)
}

/// Stability of optimality and its two bounds under a symmetric extreme law.
#[wasm_bindgen(js_name = sooReportJson)]
pub fn soo_report_json(trust: &[f64], deltas: &[f64]) -> Result<String, JsError> {
    api::soo_report_json(trust, deltas).map_err(js)
}
