use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tail probabilities `Pr{H_k > h}` for every ruler length `k <= n_max`,
/// where `H_k` is the number of throws needed to break a `k`-inch ruler.
///
/// Conditioning on the first break, the two fragments evolve independently,
/// so with `Q_k(h) = Pr{H_k > h}`:
///
/// ```text
/// Q_1(h) = 0,  Q_k(0) = 1 for k >= 2,
/// Q_k(h) = 1/(k-1) * sum_{i=1}^{k-1} [Q_i + Q_{k-i} - Q_i Q_{k-i}](h-1).
/// ```
///
/// Working with the tail instead of the CDF keeps full relative precision in
/// floating point where `Pr{H_k <= h}` is close to one. Rows stop once every
/// tail is negligible, i.e. `1 - Q == 1` in the scalar type; for exact
/// scalars that only happens when all tails are zero.
#[derive(Debug, Clone)]
pub struct HeightTable<S> {
    n_max: usize,
    // rows[h][k]
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> HeightTable<S> {
    pub fn new(n_max: usize) -> Result<Self> {
        Self::with_limit(n_max, S::HEIGHT_DP_LIMIT)
    }

    pub fn with_limit(n_max: usize, limit: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::invalid("ruler length must be positive"));
        }
        if n_max > limit {
            return Err(Error::ResourceLimit {
                what: if S::EXACT {
                    "exact height distribution"
                } else {
                    "float height distribution"
                },
                n: n_max,
                limit,
            });
        }
        let one = S::one();
        let negligible = |q: &S| one.clone() - q.clone() == one;

        let mut rows: Vec<Vec<S>> = Vec::new();
        let first: Vec<S> = (0..=n_max)
            .map(|k| if k >= 2 { S::one() } else { S::zero() })
            .collect();
        if first.iter().all(negligible) {
            return Ok(HeightTable { n_max, rows });
        }
        rows.push(first);

        for h in 1..n_max {
            let prev = rows.last().expect("at least one row");
            // prefix[k] = sum_{i=1}^{k} Q_i(h-1)
            let mut prefix = Vec::with_capacity(n_max + 1);
            prefix.push(S::zero());
            for k in 1..=n_max {
                prefix.push(prefix[k - 1].clone() + prev[k].clone());
            }
            let mut row = vec![S::zero(); n_max + 1];
            for (k, slot) in row.iter_mut().enumerate().skip(h + 2) {
                // Q_i(h-1) vanishes for i <= h, so only i in (h, k-h) contributes
                // to the cross term.
                let cross =
                    S::sum_terms((h + 1..k - h).map(|i| prev[i].clone() * prev[k - i].clone()));
                let two = S::from_u64(2).expect("small integer");
                let total = two * prefix[k - 1].clone() - cross;
                let q = total / S::from_u64(k as u64 - 1).expect("small integer");
                // rounding can leave a float tail just outside [0, 1]
                *slot = if q > one {
                    one.clone()
                } else if q < S::zero() {
                    S::zero()
                } else {
                    q
                };
            }
            if row.iter().all(negligible) {
                break;
            }
            rows.push(row);
        }
        Ok(HeightTable { n_max, rows })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Distribution of the throw count for a ruler of length `n <= n_max`.
    pub fn cdf(&self, n: usize) -> Result<HeightCdf<S>> {
        self.check(n)?;
        let mut tail: Vec<S> = self.rows.iter().map(|row| row[n].clone()).collect();
        while tail.last().is_some_and(S::is_zero) {
            tail.pop();
        }
        Ok(HeightCdf { n, tail })
    }

    /// `a(n)`, the expected number of throws.
    pub fn expected_height(&self, n: usize) -> Result<S> {
        self.check(n)?;
        Ok(S::sum_terms(self.rows.iter().map(|row| row[n].clone())))
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.n_max {
            return Err(Error::invalid(format!(
                "ruler length {n} outside the table range 1..={}",
                self.n_max
            )));
        }
        Ok(())
    }
}

/// Law of the number of throws for one ruler length.
///
/// Stored as tail probabilities `Pr{H > h}` up to the last non-negligible
/// one; past that the CDF is one.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightCdf<S> {
    n: usize,
    tail: Vec<S>,
}

impl<S: Scalar> HeightCdf<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `Pr{H > h}`.
    pub fn tail(&self, h: usize) -> S {
        self.tail.get(h).cloned().unwrap_or_else(S::zero)
    }

    /// `Pr{H >= x}`.
    pub fn tail_from(&self, x: usize) -> S {
        match x {
            0 => S::one(),
            x => self.tail(x - 1),
        }
    }

    /// `P_n(h) = Pr{H <= h}`.
    pub fn cdf(&self, h: usize) -> S {
        S::one() - self.tail(h)
    }

    /// `Pr{H = h}`.
    pub fn pmf(&self, h: usize) -> S {
        match h {
            0 => self.cdf(0),
            h => self.tail(h - 1) - self.tail(h),
        }
    }

    /// CDF values for `h = 0 .. n-1`.
    pub fn values(&self) -> Vec<S> {
        (0..self.n).map(|h| self.cdf(h)).collect()
    }

    /// Probability mass for `h = 0 .. n-1`.
    pub fn pmf_values(&self) -> Vec<S> {
        (0..self.n).map(|h| self.pmf(h)).collect()
    }

    /// `sum_h Pr{H > h}`.
    pub fn mean(&self) -> S {
        S::sum_terms(self.tail.iter().cloned())
    }
}

/// Height distribution of the `n`-inch ruler with the default size limit of
/// the scalar type.
pub fn height_cdf<S: Scalar>(n: usize) -> Result<HeightCdf<S>> {
    HeightTable::<S>::new(n)?.cdf(n)
}

/// `a(n)`: expected number of throws to break an `n`-inch ruler completely.
pub fn expected_height<S: Scalar>(n: usize) -> Result<S> {
    HeightTable::<S>::new(n)?.expected_height(n)
}

/// `b(n)`: expected height of the binary search tree of a uniformly random
/// permutation of `n` keys, via `b(n) = a(n + 1) - 1`.
pub fn bst_expected_height<S: Scalar>(n: usize) -> Result<S> {
    if n == 0 {
        return Err(Error::invalid(
            "binary search tree needs at least one vertex",
        ));
    }
    Ok(expected_height::<S>(n + 1)? - S::one())
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
    fn two_inch_ruler() {
        let cdf = height_cdf::<Q>(2).unwrap();
        assert_eq!(cdf.values(), vec![q(0, 1), q(1, 1)]);
        assert_eq!(cdf.cdf(10), q(1, 1));
    }

    #[test]
    fn one_inch_ruler() {
        let cdf = height_cdf::<Q>(1).unwrap();
        assert_eq!(cdf.values(), vec![q(1, 1)]);
        assert_eq!(cdf.cdf(5), q(1, 1));
        assert_eq!(expected_height::<Q>(1).unwrap(), q(0, 1));
    }

    #[test]
    fn four_inch_ruler() {
        let cdf = height_cdf::<Q>(4).unwrap();
        assert_eq!(cdf.values(), vec![q(0, 1), q(0, 1), q(1, 3), q(1, 1)]);
        assert_eq!(cdf.pmf(2), q(1, 3));
        assert_eq!(cdf.pmf(3), q(2, 3));
        assert_eq!(cdf.mean(), q(8, 3));
    }

    #[test]
    fn small_expectations() {
        assert_eq!(expected_height::<Q>(2).unwrap(), q(1, 1));
        assert_eq!(expected_height::<Q>(3).unwrap(), q(2, 1));
        assert_eq!(expected_height::<Q>(4).unwrap(), q(8, 3));
        assert_eq!(bst_expected_height::<Q>(1).unwrap(), q(0, 1));
        assert_eq!(bst_expected_height::<Q>(3).unwrap(), q(5, 3));
    }

    #[test]
    fn float_agrees_with_exact() {
        let exact = HeightTable::<Q>::new(40).unwrap();
        let float = HeightTable::<f64>::new(40).unwrap();
        for n in 1..=40 {
            let a = exact.expected_height(n).unwrap().to_f64();
            let b = float.expected_height(n).unwrap();
            assert!((a - b).abs() <= 1e-13 * a.max(1.0), "n={n}: {a} vs {b}");
        }
        let single = HeightTable::<f32>::new(40).unwrap();
        let a40 = exact.expected_height(40).unwrap().to_f64();
        assert!((f64::from(single.expected_height(40).unwrap()) - a40).abs() < 1e-4);
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            height_cdf::<Q>(65),
            Err(Error::ResourceLimit { limit: 64, .. })
        ));
        assert!(matches!(height_cdf::<f64>(0), Err(Error::InvalidInput(_))));
        assert!(HeightTable::<Q>::with_limit(70, 80).is_ok());
        let t = HeightTable::<f64>::new(10).unwrap();
        assert!(t.cdf(11).is_err());
    }

    #[test]
    fn cdf_shape_invariants() {
        let t = HeightTable::<Q>::new(33).unwrap();
        for n in 1..=33usize {
            let cdf = t.cdf(n).unwrap();
            let vals = cdf.values();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            let best = (n as f64).log2().ceil() as usize;
            for (h, p) in vals.iter().enumerate() {
                if h < best {
                    assert_eq!(p, &q(0, 1), "n={n} h={h}");
                }
            }
            assert_eq!(vals[n - 1], q(1, 1));
            if n >= 3 {
                // the best case is attained with positive probability
                assert!(vals[best] > q(0, 1));
                // so is the worst case
                assert!(vals[n - 2] < q(1, 1));
            }
        }
    }
}
