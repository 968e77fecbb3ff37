use std::fmt;
use std::iter::Sum;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BinaryTree, FullBinaryTree};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exact probability in lowest terms, guaranteed to lie in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

impl Probability {
    pub fn new(value: BigRational) -> Result<Self> {
        if value < BigRational::zero() || value > BigRational::one() {
            return Err(Error::invalid(format!("{value} is not a probability")));
        }
        Ok(Probability(value))
    }

    pub fn one() -> Self {
        Probability(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        Scalar::to_f64(&self.0)
    }

    /// `1/d1 * 1/d2 * ...`
    fn reciprocal_product(factors: impl IntoIterator<Item = u64>) -> Self {
        let den = factors
            .into_iter()
            .fold(BigInt::one(), |acc, d| acc * BigInt::from(d));
        Probability(BigRational::new(BigInt::one(), den))
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render())
    }
}

/// Totals are plain rationals since a sum of probabilities may exceed 1.
impl Sum<Probability> for BigRational {
    fn sum<I: Iterator<Item = Probability>>(iter: I) -> Self {
        iter.fold(BigRational::zero(), |acc, p| acc + p.0)
    }
}

impl<'a> Sum<&'a Probability> for BigRational {
    fn sum<I: Iterator<Item = &'a Probability>>(iter: I) -> Self {
        iter.fold(BigRational::zero(), |acc, p| acc + &p.0)
    }
}

/// Probability that a uniformly random permutation produces `tree`:
/// the product of `1/i(v)` over all vertices.
pub fn bst_probability(tree: &BinaryTree) -> Result<Probability> {
    if tree.is_empty() {
        return Err(Error::invalid("empty tree has no vertices"));
    }
    Ok(Probability::reciprocal_product(
        tree.subtree_sizes().into_iter().map(|s| s as u64),
    ))
}

/// Probability of a breaking scenario: a stick of length `i` breaks in
/// `i - 1` equally likely ways, so the product of `1/(label - 1)` over the
/// internal vertices.
pub fn scenario_probability(tree: &FullBinaryTree) -> Probability {
    Probability::reciprocal_product(
        tree.internal_labels()
            .into_iter()
            .map(|label| u64::from(label) - 1),
    )
}
