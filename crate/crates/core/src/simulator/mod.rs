//! Seeded Monte Carlo engine for the throw process.
//!
//! Every trial draws from its own ChaCha8 stream: the key comes from the run
//! seed and the stream id is the trial index. Trials can therefore run in any
//! order or on any number of threads and the merged histograms are the same.

mod histogram;
mod normality;

use std::fmt::Write as _;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::format_significant;

pub use histogram::{Histogram, Summary};
pub use normality::{ks_style_normality_score, standard_normal_cdf, MIN_NORMALITY_SAMPLES};

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform integer in `0..range` by Lemire's multiply-and-reject method.
pub fn bounded_u32<R: RngCore + ?Sized>(rng: &mut R, range: u32) -> u32 {
    assert!(range > 0, "empty range");
    let mut m = u64::from(rng.next_u32()) * u64::from(range);
    if (m as u32) < range {
        let threshold = range.wrapping_neg() % range;
        while (m as u32) < threshold {
            m = u64::from(rng.next_u32()) * u64::from(range);
        }
    }
    (m >> 32) as u32
}

/// Outcome of breaking one ruler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Throws {
    /// Number of throws until every fragment has unit length.
    pub height: u32,
    /// `(j, throw on which stick j became a unit fragment)` for each tracked
    /// stick, in the order requested.
    pub isolation: Vec<(usize, u32)>,
}

/// Breaks an `n`-inch ruler in synchronous throws: on each throw every
/// fragment longer than one inch splits at a uniformly chosen inchmark.
///
/// Sticks listed in `track` (1-based) have their isolation time recorded.
pub fn simulate_break<R: RngCore + ?Sized>(n: usize, rng: &mut R, track: &[usize]) -> Throws {
    if track.is_empty() {
        return Throws {
            height: break_lengths(n, rng),
            isolation: Vec::new(),
        };
    }
    let times = break_positions(n, rng);
    Throws {
        height: times.iter().copied().max().unwrap_or(0),
        isolation: track.iter().map(|&j| (j, times[j - 1])).collect(),
    }
}

/// Only fragment lengths matter for the throw count.
fn break_lengths<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> u32 {
    let mut current: Vec<u32> = if n > 1 { vec![n as u32] } else { Vec::new() };
    let mut next = Vec::new();
    let mut throws = 0;
    while !current.is_empty() {
        throws += 1;
        for &len in &current {
            let k = 1 + bounded_u32(rng, len - 1);
            next.extend([k, len - k].into_iter().filter(|&l| l > 1));
        }
        std::mem::swap(&mut current, &mut next);
        next.clear();
    }
    throws
}

/// Isolation time of every stick, indexed by `j - 1`.
fn break_positions<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut times = vec![0u32; n];
    // (offset, length)
    let mut current: Vec<(u32, u32)> = if n > 1 {
        vec![(0, n as u32)]
    } else {
        Vec::new()
    };
    let mut next = Vec::new();
    let mut throws = 0;
    while !current.is_empty() {
        throws += 1;
        for &(offset, len) in &current {
            let k = 1 + bounded_u32(rng, len - 1);
            for (o, l) in [(offset, k), (offset + k, len - k)] {
                if l == 1 {
                    times[o as usize] = throws;
                } else {
                    next.push((o, l));
                }
            }
        }
        std::mem::swap(&mut current, &mut next);
        next.clear();
    }
    times
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub track_tau: Vec<usize>,
}

impl SimConfig {
    pub fn new(n: usize, trials: u64, seed: u64) -> Self {
        SimConfig {
            n,
            trials,
            seed,
            track_tau: Vec::new(),
        }
    }

    pub fn tracking(mut self, sticks: impl IntoIterator<Item = usize>) -> Self {
        self.track_tau = sticks.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("ruler length must be positive"));
        }
        if self.n > u32::MAX as usize {
            return Err(Error::invalid("ruler length does not fit in 32 bits"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("at least one trial is required"));
        }
        if let Some(&j) = self.track_tau.iter().find(|&&j| j == 0 || j > self.n) {
            return Err(Error::invalid(format!(
                "tracked stick {j} outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauSeries {
    pub j: usize,
    pub histogram: Histogram,
    pub summary: Summary,
}

/// Output of [`run`]. The configuration, including the seed, is echoed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub config: SimConfig,
    pub height: Histogram,
    pub height_summary: Summary,
    pub tau: Vec<TauSeries>,
}

impl SimResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Three-column `series,key,value` table: the config, then each
    /// histogram, then the summaries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("series,key,value\n");
        let c = &self.config;
        let _ = writeln!(out, "config,n,{}", c.n);
        let _ = writeln!(out, "config,trials,{}", c.trials);
        let _ = writeln!(out, "config,seed,{}", c.seed);
        for j in &c.track_tau {
            let _ = writeln!(out, "config,track_tau,{j}");
        }
        let series = std::iter::once(("height".to_string(), &self.height, &self.height_summary))
            .chain(
                self.tau
                    .iter()
                    .map(|t| (format!("tau_{}", t.j), &t.histogram, &t.summary)),
            );
        for (name, hist, summary) in series {
            for (v, count) in hist.iter() {
                let _ = writeln!(out, "{name},{v},{count}");
            }
            let _ = writeln!(
                out,
                "{name}:summary,mean,{}",
                format_significant(summary.mean, 12)
            );
            let _ = writeln!(
                out,
                "{name}:summary,variance,{}",
                format_significant(summary.variance, 12)
            );
            let _ = writeln!(
                out,
                "{name}:summary,std_error,{}",
                format_significant(summary.std_error, 12)
            );
        }
        out
    }
}

/// Runs `config.trials` independent breaks in parallel.
pub fn run(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let tracked = config.track_tau.len();
    let empty = || (Histogram::new(), vec![Histogram::new(); tracked]);
    let (height, taus) = (0..config.trials)
        .into_par_iter()
        .fold(empty, |(mut h, mut taus), trial| {
            let mut rng = trial_rng(config.seed, trial);
            let throws = simulate_break(config.n, &mut rng, &config.track_tau);
            h.record(throws.height);
            for (slot, (_, t)) in taus.iter_mut().zip(throws.isolation) {
                slot.record(t);
            }
            (h, taus)
        })
        .reduce(empty, |(ha, ta), (hb, tb)| {
            let taus = ta.into_iter().zip(tb).map(|(a, b)| a.merge(b)).collect();
            (ha.merge(hb), taus)
        });
    let tau = config
        .track_tau
        .iter()
        .zip(taus)
        .map(|(&j, histogram)| TauSeries {
            j,
            summary: histogram.summary(),
            histogram,
        })
        .collect();
    Ok(SimResult {
        config: config.clone(),
        height_summary: height.summary(),
        height,
        tau,
    })
}

/// Number of records (left-to-right maxima) in a uniformly random
/// permutation of `m` items, i.e. a sum of independent Bernoulli(1/l) for
/// `l = 1..=m`.
///
/// Draws only the record positions: after a record at `p`, the next one is
/// beyond `k` with probability `p / k`, so it sits at `floor(p / U) + 1`.
pub fn sample_record_count<R: Rng + ?Sized>(m: u64, rng: &mut R) -> u32 {
    if m == 0 {
        return 0;
    }
    let mut count = 1;
    let mut pos = 1u64;
    loop {
        // U in (0, 1]
        let u = 1.0 - rng.random::<f64>();
        let next = (pos as f64 / u).floor() + 1.0;
        if next > m as f64 {
            return count;
        }
        count += 1;
        pos = next as u64;
    }
}

/// Samples the isolation time of stick `j` without simulating fragments:
/// records among the `j - 1` inchmarks on the left plus records among the
/// `n - j` on the right, drawn independently.
pub fn sample_tau_fast(j: usize, n: usize, trials: u64, seed: u64) -> Result<Histogram> {
    if n == 0 || j == 0 || j > n {
        return Err(Error::invalid(format!("stick index {j} outside 1..={n}")));
    }
    let (left, right) = ((j - 1) as u64, (n - j) as u64);
    Ok((0..trials)
        .into_par_iter()
        .fold(Histogram::new, |mut h, trial| {
            let mut rng = trial_rng(seed, trial);
            h.record(sample_record_count(left, &mut rng) + sample_record_count(right, &mut rng));
            h
        })
        .reduce(Histogram::new, Histogram::merge))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_rulers() {
        let mut rng = trial_rng(1, 0);
        assert_eq!(simulate_break(1, &mut rng, &[]).height, 0);
        assert_eq!(simulate_break(1, &mut rng, &[1]).isolation, vec![(1, 0)]);
        for _ in 0..100 {
            assert_eq!(simulate_break(2, &mut rng, &[]).height, 1);
            assert_eq!(
                simulate_break(2, &mut rng, &[1, 2]).isolation,
                vec![(1, 1), (2, 1)]
            );
        }
    }

    #[test]
    fn three_inch_middle_stick_needs_two_throws() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..100 {
            let t = simulate_break(3, &mut rng, &[2]);
            assert_eq!(t.height, 2);
            assert_eq!(t.isolation, vec![(2, 2)]);
        }
    }

    #[test]
    fn bounded_draws_cover_range() {
        let mut rng = trial_rng(9, 0);
        let mut seen = [0u32; 5];
        for _ in 0..10_000 {
            seen[bounded_u32(&mut rng, 5) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| (1800..2200).contains(&c)), "{seen:?}");
        assert_eq!(bounded_u32(&mut rng, 1), 0);
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::new(0, 1, 0).validate().is_err());
        assert!(SimConfig::new(5, 0, 0).validate().is_err());
        assert!(SimConfig::new(5, 1, 0).tracking([6]).validate().is_err());
        assert!(SimConfig::new(5, 1, 0).tracking([1, 5]).validate().is_ok());
        assert!(sample_tau_fast(0, 3, 10, 0).is_err());
    }

    #[test]
    fn record_count_edges() {
        let mut rng = trial_rng(5, 0);
        assert_eq!(sample_record_count(0, &mut rng), 0);
        assert_eq!(sample_record_count(1, &mut rng), 1);
        let h = sample_tau_fast(1, 2, 1000, 3).unwrap();
        assert_eq!(h.count(1), 1000);
    }

    #[test]
    fn csv_layout() {
        let r = run(&SimConfig::new(3, 10, 1).tracking([1])).unwrap();
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("series,key,value"));
        assert_eq!(lines.next(), Some("config,n,3"));
        assert!(csv.contains("\nheight,2,10\n"));
        assert!(csv.contains("\nheight:summary,mean,2\n"));
        assert!(csv.contains("\ntau_1:summary,"));
        assert!(csv.lines().all(|l| l.split(',').count() == 3));
    }
}
