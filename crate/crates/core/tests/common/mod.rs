#![allow(dead_code)]

use proptest::prelude::*;

/// Brute-force correctness: score every ±1 outcome with log-odds weights
/// and add up the probability of outcomes with a positive score.
/// Only meaningful for trust strictly inside (0.5, 1) in general position.
pub fn oracle_omega(trust: &[f64], truth: &[f64]) -> f64 {
    let n = trust.len();
    let weights: Vec<f64> = trust.iter().map(|p| (p / (1.0 - p)).ln()).collect();
    let mut total = 0.0;
    for mask in 0u32..(1 << n) {
        let mut score = 0.0;
        let mut prob = 1.0;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                score += weights[i];
                prob *= truth[i];
            } else {
                score -= weights[i];
                prob *= 1.0 - truth[i];
            }
        }
        if score > 0.0 {
            total += prob;
        }
    }
    total
}

/// Majority vote of n identical sources, ties split evenly.
pub fn binomial_majority(n: u32, p: f64) -> f64 {
    let mut total = 0.0;
    for k in 0..=n {
        let c = (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64);
        let mass = c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
        if 2 * k > n {
            total += mass;
        } else if 2 * k == n {
            total += mass / 2.0;
        }
    }
    total
}

pub fn trust_strategy(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.5001f64..0.9999, 1..=max_n)
}

pub fn pair_strategy(max_n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(0.5001f64..0.9999, n),
            prop::collection::vec(0.0f64..=1.0, n),
        )
    })
}
