//! Exact integer and rational linear algebra.
//!
//! Everything that decides a rank, a dimension or a polynomial coefficient
//! lives here and never touches floating point.

mod matrix;
pub mod modular;
mod poly;

pub use matrix::{IntMatrix, SpanBuilder};
pub use poly::IntPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// A vector of exact rationals in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RationalVector(entries)
    }

    pub fn from_integers<I: IntoIterator<Item = BigInt>>(it: I) -> Self {
        RationalVector(it.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    /// The entries as integers, if every denominator is one.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|q| q.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}
