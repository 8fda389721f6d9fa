mod common;

use proptest::prelude::*;
use wmv_core::sensitivity::{
    linspace, predict_breakpoints_identical, predict_breakpoints_single, sweep, sweep_identical, verify_shape,
    ExpectedShape, IdenticalGroupSpec, SweepMode,
};
use wmv_core::{correctness, revealed_correctness, ProbabilityVector};

fn trust(v: &[f64]) -> ProbabilityVector {
    ProbabilityVector::trust(v.to_vec()).unwrap()
}

fn truth(v: &[f64]) -> ProbabilityVector {
    ProbabilityVector::trustworthiness(v.to_vec()).unwrap()
}

fn instance(max_n: usize) -> impl Strategy<Value = (Vec<f64>, usize)> {
    (1..=max_n).prop_flat_map(|n| (prop::collection::vec(0.5f64..=1.0, n), 0..n))
}

/// Abscissas where the slope of a sampled curve changes by more than `tol`.
fn slope_changes(grid: &[f64], values: &[f64], tol: f64) -> Vec<f64> {
    let slopes: Vec<f64> = (1..grid.len())
        .map(|k| (values[k] - values[k - 1]) / (grid[k] - grid[k - 1]))
        .collect();
    (1..slopes.len())
        .filter(|&k| (slopes[k] - slopes[k - 1]).abs() > tol)
        .map(|k| grid[k])
        .collect()
}

#[test]
fn slope_changes_on_fine_grid_match_prediction() {
    let base = [0.8, 0.75, 0.7, 0.6];
    let grid = linspace(0.5, 1.0, 501).unwrap();
    for i in 0..4 {
        let r = sweep(&trust(&base), &truth(&base), SweepMode::Direct, i, &grid).unwrap();
        let predicted = predict_breakpoints_single(&trust(&base), i).unwrap();
        for x in slope_changes(&grid, &r.values, 1e-9) {
            assert!(
                predicted.iter().any(|b| (b - x).abs() <= 1e-3 + 1e-12),
                "source {i}: unpredicted change at {x}"
            );
        }
    }
}

#[test]
fn identical_pair_with_two_fixed_sources() {
    let spec = IdenticalGroupSpec::new(2, linspace(0.5, 1.0, 1001).unwrap(), vec![0.7, 0.7]).unwrap();
    let r = sweep_identical(&spec, SweepMode::Direct).unwrap();
    let report = verify_shape(&r, ExpectedShape::SegmentwiseConcave).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
}

#[test]
fn breakpoint_count_bound() {
    let rest = vec![0.55, 0.65, 0.75, 0.85];
    for m in 1..=6usize {
        let spec = IdenticalGroupSpec::new(m, vec![], rest.clone()).unwrap();
        let b = predict_breakpoints_identical(&spec).unwrap();
        assert!(b.len() <= (1 << (rest.len() - 1)) * m.div_ceil(2));
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn direct_curves_are_piecewise_linear_convex((base, i) in instance(5)) {
        let grid = linspace(0.5, 1.0, 201).unwrap();
        let r = sweep(&trust(&base), &truth(&base), SweepMode::Direct, i, &grid).unwrap();
        let report = verify_shape(&r, ExpectedShape::PiecewiseLinearConvex).unwrap();
        prop_assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn truth_varying_curves_are_affine_and_non_decreasing(
        (t, p, i) in (1usize..=5).prop_flat_map(|n| (
            prop::collection::vec(0.5f64..=1.0, n),
            prop::collection::vec(0.0f64..=1.0, n),
            0..n,
        ))
    ) {
        let grid = linspace(0.0, 1.0, 101).unwrap();
        let r = sweep(&trust(&t), &truth(&p), SweepMode::TruthVarying, i, &grid).unwrap();
        let (v0, v1) = (r.values[0], r.values[100]);
        prop_assert!(v1 >= v0 - 1e-12);
        for (x, v) in grid.iter().zip(&r.values) {
            prop_assert!((v - (v0 + (v1 - v0) * x)).abs() < 1e-9);
        }
    }

    #[test]
    fn trust_varying_curves_are_staircases(
        (p, i) in (1usize..=5).prop_flat_map(|n| (prop::collection::vec(0.5f64..=1.0, n), 0..n))
    ) {
        let grid = linspace(0.5, 1.0, 201).unwrap();
        let r = sweep(&trust(&p), &truth(&p), SweepMode::TrustVarying, i, &grid).unwrap();
        let report = verify_shape(&r, ExpectedShape::Staircase).unwrap();
        prop_assert!(report.passed(), "{:?}", report.violations);
        let ceiling = revealed_correctness(&p).unwrap();
        for v in &r.values {
            prop_assert!(*v <= ceiling + 1e-12);
        }
    }

    #[test]
    fn identical_groups_are_segmentwise_concave(
        (m, rest) in (1usize..=4).prop_flat_map(|m| (Just(m), prop::collection::vec(0.5f64..=1.0, 0..=(6 - m).min(2))))
    ) {
        let spec = IdenticalGroupSpec::new(m, linspace(0.5, 1.0, 201).unwrap(), rest).unwrap();
        let r = sweep_identical(&spec, SweepMode::Direct).unwrap();
        let report = verify_shape(&r, ExpectedShape::SegmentwiseConcave).unwrap();
        prop_assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn surfaces_agree_with_pointwise_correctness(
        (t, i, j, x, y) in (2usize..=5).prop_flat_map(|n| (
            prop::collection::vec(0.5f64..=1.0, n),
            0..n,
            0..n,
            0.5f64..=1.0,
            0.5f64..=1.0,
        )).prop_filter("distinct indices", |c| c.1 != c.2)
    ) {
        let s = wmv_core::sensitivity::surface_2d(&trust(&t), &truth(&t), SweepMode::Direct, i, j, &[x], &[y]).unwrap();
        let mut v = t.clone();
        v[i] = x;
        v[j] = y;
        let direct = correctness(&trust(&v), &truth(&v)).unwrap();
        prop_assert!((s.get(0, 0) - direct).abs() < 1e-15);
    }
}

#[test]
fn full_majority_groups_are_concave_and_increasing() {
    for m in 1..=7usize {
        let spec = IdenticalGroupSpec::new(m, linspace(0.5, 1.0, 201).unwrap(), vec![]).unwrap();
        let r = sweep_identical(&spec, SweepMode::Direct).unwrap();
        assert!(r.breakpoints.as_ref().unwrap().is_empty());
        let report = verify_shape(&r, ExpectedShape::SegmentwiseConcave).unwrap();
        assert!(report.passed(), "m={m}: {:?}", report.violations);
        assert!(r.values.windows(2).all(|w| w[1] > w[0]), "m={m} not strictly increasing");
        for (p, v) in r.grid.iter().zip(&r.values) {
            assert!((v - common::binomial_majority(m as u32, *p)).abs() < 1e-12);
        }
    }
}
