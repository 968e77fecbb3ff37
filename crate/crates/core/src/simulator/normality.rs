use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Smallest sample accepted by [`ks_style_normality_score`].
pub const MIN_NORMALITY_SAMPLES: usize = 1000;

/// Standard normal distribution function.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Largest absolute gap between the empirical distribution function of
/// `samples` and the standard normal one, checked on both sides of every
/// jump.
pub fn ks_style_normality_score(samples: &[f64]) -> Result<f64> {
    if samples.len() < MIN_NORMALITY_SAMPLES {
        return Err(Error::invalid(format!(
            "{} samples given, at least {MIN_NORMALITY_SAMPLES} needed",
            samples.len()
        )));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("samples must be finite"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut score = 0.0f64;
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        let mut k = i;
        while k < sorted.len() && sorted[k] == x {
            k += 1;
        }
        let phi = standard_normal_cdf(x);
        let below = i as f64 / n;
        let through = k as f64 / n;
        score = score.max((phi - below).abs()).max((through - phi).abs());
        i = k;
    }
    Ok(score)
}
