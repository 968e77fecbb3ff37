//! Asymptotic constants and the closed-form bounds on the number of throws.
//!
//! `alpha` is the root in `[2, inf)` of `alpha * ln(2e / alpha) = 1` and
//! `beta = (3/2) / ln(alpha / 2)`. Both are computed, never hard-coded.

use std::sync::OnceLock;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::exact::{harmonic2_f64, harmonic_f64, tau_pgf};

/// Tolerance used for the shared [`constants`].
pub const ALPHA_TOLERANCE: f64 = 1e-13;

/// Bisection on `[lo, hi]` for a continuous `f` with a sign change.
///
/// Stops when `|f(mid)| <= tol` or when the bracket can no longer shrink.
pub fn bisect<F, G>(f: G, mut lo: F, mut hi: F, tol: F) -> Result<F>
where
    F: Float,
    G: Fn(F) -> F,
{
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if f_lo.is_nan() || f_hi.is_nan() || f_lo * f_hi > F::zero() {
        return Err(Error::invalid("bracket does not contain a sign change"));
    }
    if f_lo.abs() <= tol {
        return Ok(lo);
    }
    if f_hi.abs() <= tol {
        return Ok(hi);
    }
    let two = F::one() + F::one();
    loop {
        let mid = lo + (hi - lo) / two;
        let f_mid = f(mid);
        if f_mid.abs() <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if (f_mid < F::zero()) == (f_lo < F::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

/// `g(a) = a ln(2e/a) - 1`, whose root in `[2, inf)` is `alpha`.
pub fn alpha_equation<F: Float>(a: F) -> F {
    let two = F::one() + F::one();
    let e = F::one().exp();
    a * (two * e / a).ln() - F::one()
}

/// Solves for `alpha` on the bracket `[2, 8]`, where `g` goes from `+1` to
/// negative and is strictly decreasing.
pub fn solve_alpha<F: Float>(tol: F) -> Result<F> {
    let limit = F::from(1e-3).expect("representable");
    if !(tol > F::zero() && tol < limit) {
        return Err(Error::invalid("tolerance must lie in (0, 1e-3)"));
    }
    let lo = F::from(2.0).expect("representable");
    let hi = F::from(8.0).expect("representable");
    bisect(alpha_equation, lo, hi, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_tol: f64,
}

impl AsymptoticConstants {
    pub fn solve(tol: f64) -> Result<Self> {
        let alpha = solve_alpha(tol)?;
        Ok(AsymptoticConstants {
            alpha,
            beta: 1.5 / (alpha / 2.0).ln(),
            alpha_tol: tol,
        })
    }
}

/// Process-wide constants, solved on first use.
pub fn constants() -> &'static AsymptoticConstants {
    static CONSTANTS: OnceLock<AsymptoticConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        AsymptoticConstants::solve(ALPHA_TOLERANCE).expect("fixed bracket contains the root")
    })
}

/// Chernoff bound `Pr{tau_{j,n} > x} <= rho^-x f_{j,n}(rho)` for `rho > 1`.
///
/// The value is not clamped and may exceed one.
pub fn chernoff_tail(j: usize, n: usize, x: u32, rho: f64) -> Result<f64> {
    if rho.is_nan() || rho <= 1.0 {
        return Err(Error::invalid(format!("rho = {rho} must exceed 1")));
    }
    let f = tau_pgf::<f64>(j, n)?.eval_f64(rho);
    Ok(f * rho.powf(-f64::from(x)))
}

/// Union bound on `Pr{max_j tau_{j,n} >= x}` for one ruler length and
/// threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub n: usize,
    /// `(n + 1) / 2`
    pub m: f64,
    pub x: u32,
    pub value: f64,
}

impl TailBound {
    /// `min(1, 2 (2/alpha)^(x - alpha ln m))`, exactly one when
    /// `x <= alpha ln m`.
    pub fn new(n: usize, x: u32) -> Self {
        let alpha = constants().alpha;
        let m = (n as f64 + 1.0) / 2.0;
        let excess = f64::from(x) - alpha * m.ln();
        let value = if excess <= 0.0 {
            1.0
        } else {
            (2.0 * (2.0 / alpha).powf(excess)).min(1.0)
        };
        TailBound { n, m, x, value }
    }
}

pub fn max_tail_bound(n: usize, x: u32) -> f64 {
    TailBound::new(n, x).value
}

/// `alpha ln(n + 1) - 1`.
pub fn expectation_upper_bound(n: usize) -> f64 {
    constants().alpha * (n as f64 + 1.0).ln() - 1.0
}

/// `alpha ln(n + 1) - alpha ln 2 - ln 2 / ln(2/alpha) + 2/(alpha - 2)`.
pub fn expectation_upper_bound_sharp(n: usize) -> f64 {
    constants().alpha * (n as f64 + 1.0).ln() + sharp_offset()
}

/// The constant term of the sharp bound; it is below `-1`.
pub fn sharp_offset() -> f64 {
    let alpha = constants().alpha;
    let ln2 = std::f64::consts::LN_2;
    -alpha * ln2 - ln2 / (2.0 / alpha).ln() + 2.0 / (alpha - 2.0)
}

fn check_loglog(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid(format!("n = {n} must be at least 3")));
    }
    Ok((n as f64).ln())
}

/// `alpha ln n - beta ln ln n`, without the O(1) term.
pub fn reed_asymptote(n: usize) -> Result<f64> {
    let ln_n = check_loglog(n)?;
    let c = constants();
    Ok(c.alpha * ln_n - c.beta * ln_n.ln())
}

/// `alpha ln n - (beta/3) ln ln n`, without the O(1) term.
pub fn poisson_bound_form(n: usize) -> Result<f64> {
    let ln_n = check_loglog(n)?;
    let c = constants();
    Ok(c.alpha * ln_n - c.beta / 3.0 * ln_n.ln())
}

/// Center `2 ln n` and scale `sqrt(2 ln n)` for standardizing isolation
/// times of single sticks.
pub fn clt_reference(j: usize, n: usize) -> Result<(f64, f64)> {
    if n < 3 {
        return Err(Error::invalid(format!("n = {n} must be at least 3")));
    }
    if j == 0 || j > n {
        return Err(Error::invalid(format!("stick index {j} outside 1..={n}")));
    }
    Ok(clt_center_scale(n as f64))
}

/// `(2 ln n, sqrt(2 ln n))` for a real ruler length.
pub fn clt_center_scale(n: f64) -> (f64, f64) {
    let center = 2.0 * n.ln();
    (center, center.sqrt())
}

/// Exact mean and variance of `(tau_{j,n} - center) / scale` with the
/// [`clt_reference`] normalization, evaluated from harmonic sums.
pub fn standardized_tau_moments(j: usize, n: usize) -> Result<(f64, f64)> {
    let (center, scale) = clt_reference(j, n)?;
    let (left, right) = (j - 1, n - j);
    let mean = harmonic_f64(left) + harmonic_f64(right);
    let var = harmonic_f64(left) - harmonic2_f64(left) + harmonic_f64(right) - harmonic2_f64(right);
    Ok(((mean - center) / scale, var / (scale * scale)))
}
