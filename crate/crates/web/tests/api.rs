use serde_json::Value;
use wmv_web::api;

const RUNNING: [f64; 4] = [0.8, 0.75, 0.7, 0.6];

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn correctness_defaults_truth_to_trust() {
    let w = api::correctness_value(&RUNNING, &[]).unwrap();
    assert!((w - 0.845).abs() < 1e-12);
    let mixed = api::correctness_value(&[0.9, 0.6, 0.6], &[0.6, 0.9, 0.9]).unwrap();
    assert!((mixed - 0.6).abs() < 1e-12);
}

#[test]
fn correctness_rejects_bad_trust() {
    assert!(api::correctness_value(&[0.3], &[]).is_err());
    assert!(api::correctness_value(&[0.7, 0.7], &[0.7]).is_err());
}

#[test]
fn sweep_reports_curve_and_breakpoints() {
    let v = parse(&api::sweep_json(&RUNNING, &[], "direct", 1, 11).unwrap());
    assert_eq!(v["x"].as_array().unwrap().len(), 11);
    assert_eq!(v["omega"][10], 1.0);
    assert_eq!(v["breakpoints"].as_array().unwrap().len(), 4);
}

#[test]
fn truth_sweeps_cover_the_unit_interval() {
    let v = parse(&api::sweep_json(&RUNNING, &[], "truth_varying", 2, 5).unwrap());
    assert_eq!(v["x"][0], 0.0);
    assert!(v["breakpoints"].is_null());
}

#[test]
fn sweep_validates_index_and_points() {
    assert!(api::sweep_json(&RUNNING, &[], "direct", 0, 11).is_err());
    assert!(api::sweep_json(&RUNNING, &[], "direct", 5, 11).is_err());
    assert!(api::sweep_json(&RUNNING, &[], "direct", 1, 1).is_err());
    assert!(api::sweep_json(&RUNNING, &[], "sideways", 1, 11).is_err());
}

#[test]
fn surface_has_one_row_per_x() {
    let v = parse(&api::surface_json(&RUNNING, &[], "direct", 1, 2, 6).unwrap());
    let rows = v["omega"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 6));
    assert!(api::surface_json(&RUNNING, &[], "direct", 2, 2, 6).is_err());
}

#[test]
fn soo_report_matches_hand_values() {
    let v = parse(&api::soo_report_json(&RUNNING, &[0.05]).unwrap());
    assert!((v["omega_trust"].as_f64().unwrap() - 0.845).abs() < 1e-12);
    assert!((v["e_omega_revealed"].as_f64().unwrap() - 0.8514453125).abs() < 1e-12);
    assert!((v["soo"].as_f64().unwrap() - 0.0064453125).abs() < 1e-12);
    assert!((v["bound_strong"].as_f64().unwrap() - 0.050103).abs() < 1e-6);
    assert!((v["bound_weak"].as_f64().unwrap() - 0.057479).abs() < 1e-6);
    assert_eq!(v["deltas"].as_array().unwrap().len(), 4);
}

#[test]
fn soo_report_checks_half_widths() {
    assert!(api::soo_report_json(&RUNNING, &[0.05, 0.05]).is_err());
    assert!(api::soo_report_json(&[0.9], &[0.2]).is_err());
}
