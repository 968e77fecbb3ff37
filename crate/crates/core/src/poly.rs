use std::ops::Mul;

use crate::scalar::Scalar;

/// Dense univariate polynomial, coefficient `k` multiplies `x^k`.
///
/// Trailing zero coefficients are kept only for the zero polynomial, which is
/// stored as `[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(S::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiplies in place by the linear factor `a + b x`.
    pub fn mul_linear(&mut self, a: &S, b: &S) {
        let mut prev = S::zero();
        for c in self.coeffs.iter_mut() {
            let cur = c.clone();
            *c = a.clone() * cur.clone() + b.clone() * prev;
            prev = cur;
        }
        self.coeffs.push(b.clone() * prev);
        let normalized = Self::new(std::mem::take(&mut self.coeffs));
        *self = normalized;
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(S::zero);
        Self::new((0..len).map(|i| get(self, i) + get(other, i)).collect())
    }

    /// Schoolbook convolution.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Evaluation at a real point after converting the coefficients.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: Self) -> Polynomial<S> {
        self.convolve(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: u64, d: u64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn linear_factor_matches_convolution() {
        let mut p = Polynomial::new(vec![q(1, 2), q(1, 3)]);
        let lin = Polynomial::new(vec![q(2, 5), q(3, 5)]);
        let expected = p.convolve(&lin);
        p.mul_linear(&q(2, 5), &q(3, 5));
        assert_eq!(p, expected);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p: Polynomial<f64> = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(Polynomial::<f64>::new(vec![]).coeffs(), &[0.0]);
    }

    #[test]
    fn horner() {
        let p = Polynomial::new(vec![1.0, -3.0, 2.0]);
        assert_eq!(p.eval(&2.0), 3.0);
        assert_eq!(p.eval_f64(0.5), 0.0);
        let r = Polynomial::new(vec![q(0, 1), q(1, 2), q(1, 2)]);
        assert_eq!(r.eval(&q(1, 1)), q(1, 1));
        assert_eq!((&r * &Polynomial::x()).degree(), 3);
        assert_eq!(r.add(&Polynomial::one()).coeffs()[0], q(1, 1));
        assert_eq!(r.scale(&q(2, 1)).coeffs()[2], q(1, 1));
    }
}
