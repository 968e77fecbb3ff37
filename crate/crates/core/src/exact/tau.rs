use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Largest ruler length for which [`tau_pgf`] builds coefficients.
pub const DEFAULT_TAU_LIMIT: usize = 2000;

/// Generating function of the number of records in a uniformly random
/// permutation of `m` items: `prod_{l=1}^{m} (1 + (x - 1)/l)`.
///
/// Item `l` is a record with probability `1/l`, independently of the others.
/// The same polynomial is the generating function of the throws needed to
/// isolate the first stick of an `(m + 1)`-inch ruler.
pub fn record_count_pgf<S: Scalar>(m: usize) -> Polynomial<S> {
    product_of_factors(1..=m as u64)
}

fn product_of_factors<S: Scalar>(ls: impl Iterator<Item = u64>) -> Polynomial<S> {
    let ls: Vec<u64> = ls.collect();
    Polynomial::new(S::record_factor_product(&ls))
}

/// Generating function `f_{j,n}(x) = E[x^tau]` of the number of throws
/// `tau` after which stick `j` of an `n`-inch ruler is isolated.
#[derive(Debug, Clone, PartialEq)]
pub struct TauPgf<S> {
    j: usize,
    n: usize,
    poly: Polynomial<S>,
}

impl<S: Scalar> TauPgf<S> {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Polynomial<S> {
        &self.poly
    }

    /// `Pr{tau = k}` for `k = 0 ..= degree`.
    pub fn pmf(&self) -> &[S] {
        self.poly.coeffs()
    }

    /// `Pr{tau > x}`.
    pub fn tail(&self, x: usize) -> S {
        S::sum_terms(self.pmf().iter().skip(x + 1).cloned())
    }

    /// Mean read off the coefficients, `f'(1)`.
    pub fn mean(&self) -> S {
        S::sum_terms(
            self.pmf()
                .iter()
                .enumerate()
                .map(|(k, c)| c.clone() * S::from_usize(k).expect("small integer")),
        )
    }

    /// Variance read off the coefficients, `f''(1) + f'(1) - f'(1)^2`.
    pub fn variance(&self) -> S {
        let second = S::sum_terms(self.pmf().iter().enumerate().map(|(k, c)| {
            let k = S::from_usize(k).expect("small integer");
            c.clone() * k.clone() * k
        }));
        let mean = self.mean();
        second - mean.clone() * mean
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.poly.eval_f64(x)
    }
}

fn check_stick(j: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("ruler length must be positive"));
    }
    if j == 0 || j > n {
        return Err(Error::invalid(format!("stick index {j} outside 1..={n}")));
    }
    Ok(())
}

/// Coefficients of `f_{j,n}`: the product of the `j - 1` linear factors of
/// the left inchmarks and the `n - j` factors of the right ones.
pub fn tau_pgf<S: Scalar>(j: usize, n: usize) -> Result<TauPgf<S>> {
    tau_pgf_capped(j, n, DEFAULT_TAU_LIMIT)
}

pub fn tau_pgf_capped<S: Scalar>(j: usize, n: usize, limit: usize) -> Result<TauPgf<S>> {
    check_stick(j, n)?;
    if n > limit {
        return Err(Error::ResourceLimit {
            what: "isolation-time generating function",
            n,
            limit,
        });
    }
    let poly = product_of_factors((1..j as u64).chain(1..=(n - j) as u64));
    Ok(TauPgf { j, n, poly })
}

/// Exact distribution of the isolation time of stick `j`, indexed by throw.
pub fn tau_pmf(j: usize, n: usize) -> Result<Vec<BigRational>> {
    Ok(tau_pgf::<BigRational>(j, n)?.poly.into_coeffs())
}

/// Harmonic numbers `H_m = sum 1/l` and `H_m^(2) = sum 1/l^2` for `m <= m_max`.
#[derive(Debug, Clone)]
pub struct HarmonicSums<S> {
    first: Vec<S>,
    second: Vec<S>,
}

impl<S: Scalar> HarmonicSums<S> {
    pub fn up_to(m_max: usize) -> Self {
        let mut first = Vec::with_capacity(m_max + 1);
        let mut second = Vec::with_capacity(m_max + 1);
        first.push(S::zero());
        second.push(S::zero());
        for l in 1..=m_max as u64 {
            let inv = S::from_ratio(1, l);
            first.push(first.last().cloned().expect("seeded") + inv.clone());
            second.push(second.last().cloned().expect("seeded") + inv.clone() * inv);
        }
        HarmonicSums { first, second }
    }

    pub fn m_max(&self) -> usize {
        self.first.len() - 1
    }

    pub fn h(&self, m: usize) -> &S {
        &self.first[m]
    }

    pub fn h2(&self, m: usize) -> &S {
        &self.second[m]
    }

    /// `H_{j-1} + H_{n-j}`.
    pub fn tau_mean(&self, j: usize, n: usize) -> S {
        self.h(j - 1).clone() + self.h(n - j).clone()
    }

    /// `(H_{j-1} - H_{j-1}^(2)) + (H_{n-j} - H_{n-j}^(2))`.
    pub fn tau_variance(&self, j: usize, n: usize) -> S {
        let side = |m: usize| self.h(m).clone() - self.h2(m).clone();
        side(j - 1) + side(n - j)
    }
}

/// Harmonic number `H_m` evaluated in floating point, summed from the small
/// terms up.
pub fn harmonic_f64(m: usize) -> f64 {
    f64::sum_terms((1..=m).rev().map(|l| 1.0 / l as f64))
}

/// `H_m^(2)` in floating point.
pub fn harmonic2_f64(m: usize) -> f64 {
    f64::sum_terms((1..=m).rev().map(|l| {
        let l = l as f64;
        1.0 / (l * l)
    }))
}

/// Exact `E[tau_{j,n}] = H_{j-1} + H_{n-j}`.
pub fn tau_mean(j: usize, n: usize) -> Result<BigRational> {
    check_stick(j, n)?;
    Ok(HarmonicSums::<BigRational>::up_to(n).tau_mean(j, n))
}

/// Exact `Var[tau_{j,n}]`: each side is a sum of independent Bernoulli(1/l).
pub fn tau_variance(j: usize, n: usize) -> Result<BigRational> {
    check_stick(j, n)?;
    Ok(HarmonicSums::<BigRational>::up_to(n).tau_variance(j, n))
}
