//! Random ruler breaking: a ruler of `n` inches is thrown down repeatedly,
//! every fragment longer than an inch breaking at a uniform inchmark, until
//! only unit sticks remain.
//!
//! The crate provides the breaking scenarios as full binary trees and their
//! correspondence with random binary search trees ([`trees`]), the exact
//! distribution of the number of throws and of single-stick isolation times
//! ([`exact`]), the closed-form bounds and asymptotic constants ([`bounds`]),
//! and a seeded Monte Carlo engine ([`simulator`]).
//!
//! The numeric routines are generic over [`Scalar`], implemented for `f32`,
//! `f64` and [`Rational`]; the aliases below name the common instantiations.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod poly;
pub mod scalar;
pub mod simulator;
pub mod trees;

use std::fmt;
use std::str::FromStr;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational used for exact results.
pub type Rational = num_rational::BigRational;

pub type ExactHeightCdf = exact::HeightCdf<Rational>;
pub type FloatHeightCdf = exact::HeightCdf<f64>;
pub type ExactHeightTable = exact::HeightTable<Rational>;
pub type FloatHeightTable = exact::HeightTable<f64>;
pub type ExactTauPgf = exact::TauPgf<Rational>;
pub type FloatTauPgf = exact::TauPgf<f64>;

/// Arithmetic used by a computation chosen at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::invalid(format!("unknown mode {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}
