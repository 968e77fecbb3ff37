//! Scalar abstraction shared by the exact (rational) and floating-point code paths.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

/// Field element used by the dynamic programs and polynomial routines.
///
/// Implemented for `f32`, `f64` and [`BigRational`]. Exact arithmetic is
/// selected by instantiating with `BigRational`.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + FromPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact.
    const EXACT: bool;
    /// Largest ruler length the height DP accepts by default.
    const HEIGHT_DP_LIMIT: usize;

    fn from_ratio(num: u64, den: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// Sum of a sequence of terms. Floating types use compensated summation.
    fn sum_terms<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, t| acc + t)
    }

    /// Renders the value for tabular output: `p/q` for rationals, 12
    /// significant digits for floats.
    fn render(&self) -> String;

    /// Coefficients of `prod_{l in ls} (1 + (x - 1)/l)`, lowest degree first.
    fn record_factor_product(ls: &[u64]) -> Vec<Self> {
        let mut coeffs = vec![Self::one()];
        for &l in ls {
            let (a, b) = (Self::from_ratio(l - 1, l), Self::from_ratio(1, l));
            let mut prev = Self::zero();
            for c in coeffs.iter_mut() {
                let cur = c.clone();
                *c = a.clone() * cur.clone() + b.clone() * prev;
                prev = cur;
            }
            coeffs.push(b * prev);
        }
        coeffs
    }
}

/// Neumaier's variant of Kahan summation.
fn neumaier<F, I>(terms: I) -> F
where
    F: num_traits::Float,
    I: IntoIterator<Item = F>,
{
    let mut sum = F::zero();
    let mut comp = F::zero();
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp = comp + ((sum - s) + t);
        } else {
            comp = comp + ((t - s) + sum);
        }
        sum = s;
    }
    sum + comp
}

/// Formats `x` with `digits` significant digits, `%g` style: fixed notation
/// for moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const HEIGHT_DP_LIMIT: usize = 20_000;

    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sum_terms<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        neumaier(terms)
    }

    fn render(&self) -> String {
        format_significant(*self, 12)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    const HEIGHT_DP_LIMIT: usize = 20_000;

    fn from_ratio(num: u64, den: u64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn sum_terms<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        neumaier(terms)
    }

    fn render(&self) -> String {
        format_significant(f64::from(*self), 7)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const HEIGHT_DP_LIMIT: usize = 64;

    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Ratio::to_f64 gives up when numerator and denominator both overflow.
            let num = self.numer().to_f64().unwrap_or(f64::NAN);
            let den = self.denom().to_f64().unwrap_or(f64::NAN);
            num / den
        })
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    /// Multiplies the integer factors `(l - 1) + x` and divides by `prod l`
    /// once, instead of reducing a fraction at every step.
    fn record_factor_product(ls: &[u64]) -> Vec<Self> {
        let mut coeffs = vec![BigInt::one()];
        for &l in ls {
            let shift = BigInt::from(l - 1);
            let mut prev = BigInt::zero();
            for c in coeffs.iter_mut() {
                let cur = std::mem::take(c);
                *c = &cur * &shift + prev;
                prev = cur;
            }
            coeffs.push(prev);
        }
        let den: BigInt = ls.iter().map(|&l| BigInt::from(l)).product();
        coeffs
            .into_iter()
            .map(|c| BigRational::new(c, den.clone()))
            .collect()
    }
}
