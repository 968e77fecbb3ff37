//! Independent oracles shared by the integration and acceptance tests. None
//! of these go through the height recurrence or the generating functions.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use ruler_break_core::trees::{enumerate_full_trees, scenario_probability};
use ruler_break_core::Rational;

/// Number of permutations of `{1..m}` whose binary search tree has height
/// `h`, for every `h`. Walks every insertion order; a new key lands one
/// level below the deeper of its current predecessor and successor.
pub fn bst_height_counts(m: usize) -> Vec<u64> {
    if m == 0 {
        return vec![];
    }
    (0..m)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0u64; m];
            let mut depth = vec![-1i32; m];
            depth[first] = 0;
            walk(&mut depth, 1, 0, &mut counts);
            counts
        })
        .reduce(
            || vec![0u64; m],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        )
}

fn walk(depth: &mut [i32], placed: usize, height: i32, counts: &mut [u64]) {
    let m = depth.len();
    if placed == m {
        counts[height as usize] += 1;
        return;
    }
    for x in 0..m {
        if depth[x] >= 0 {
            continue;
        }
        let pred = (0..x)
            .rev()
            .find(|&k| depth[k] >= 0)
            .map_or(-1, |k| depth[k]);
        let succ = (x + 1..m).find(|&k| depth[k] >= 0).map_or(-1, |k| depth[k]);
        let d = pred.max(succ) + 1;
        depth[x] = d;
        walk(depth, placed + 1, height.max(d), counts);
        depth[x] = -1;
    }
}

/// `b(m)` as an exact average over all `m!` permutations.
pub fn bst_expected_height_by_permutations(m: usize) -> BigRational {
    let counts = bst_height_counts(m);
    let total: u64 = counts.iter().sum();
    let weighted: u64 = counts.iter().enumerate().map(|(h, c)| h as u64 * c).sum();
    BigRational::new(BigInt::from(weighted), BigInt::from(total))
}

/// `Pr{height = h}` aggregated over the enumerated breaking scenarios.
pub fn enumerated_height_pmf(n: usize) -> Vec<Rational> {
    let mut pmf = vec![Rational::zero(); n];
    for t in enumerate_full_trees(n).unwrap() {
        pmf[t.height()] += scenario_probability(&t).into_inner();
    }
    pmf
}

pub fn enumerated_height_cdf(n: usize) -> Vec<Rational> {
    let mut acc = Rational::zero();
    enumerated_height_pmf(n)
        .into_iter()
        .map(|p| {
            acc += p;
            acc.clone()
        })
        .collect()
}

/// Record count by flipping one coin per item.
pub fn record_count_naive<R: Rng>(m: u64, rng: &mut R) -> u32 {
    (1..=m)
        .filter(|&l| rng.random::<f64>() * (l as f64) < 1.0)
        .count() as u32
}

/// `|observed - p| <= k * sqrt(p (1 - p) / trials)`.
pub fn within_sigma(count: u64, trials: u64, p: f64, k: f64) -> bool {
    let freq = count as f64 / trials as f64;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    (freq - p).abs() <= k * sigma
}

/// Checks every bin of an empirical histogram against exact probabilities
/// `probs[v]`, returning the offending bins.
pub fn bins_outside_sigma(
    hist: &ruler_break_core::simulator::Histogram,
    probs: &[f64],
    k: f64,
) -> Vec<(u32, u64, f64)> {
    let trials = hist.total();
    let top = probs.len().max(hist.max().map_or(0, |v| v as usize + 1));
    (0..top as u32)
        .filter_map(|v| {
            let p = probs.get(v as usize).copied().unwrap_or(0.0);
            let c = hist.count(v);
            (!within_sigma(c, trials, p, k)).then_some((v, c, p))
        })
        .collect()
}
