//! Exact rational linear algebra: matrices, canonical subspaces, reduced row
//! echelon forms, kernels, affine solves, characteristic polynomials and
//! generalized eigenspaces.
//!
//! Everything here is pure and exact. Subspaces are kept in reduced
//! row-echelon form with leading coefficient 1, so subspace equality is plain
//! data equality and all higher-level golden tests are deterministic.

mod eigen;
mod matrix;
mod poly;
mod rref;
mod subspace;

pub use eigen::{char_poly, generalized_eigenspace, rational_eigen, RationalSpectrum};
pub use matrix::Matrix;
pub use poly::Polynomial;
#[cfg(feature = "parallel")]
pub use rref::rref_parallel;
pub use rref::{kernel, residual, rref, rref_sequential, solve_affine, AffineSolution, Rref};
pub use subspace::Subspace;

use num_bigint::BigInt;
use thiserror::Error;

/// Exact rational scalar: the base field of the whole crate.
///
/// `num_rational::BigRational` keeps every value reduced (gcd of numerator
/// and denominator is 1) with a positive denominator, and zero is `0/1`,
/// which is exactly the canonical form the rest of the crate relies on.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`. Panics if `d` is zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| LinalgError::BadRational(s.to_string()))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| LinalgError::BadRational(s.to_string()))?;
    if d == BigInt::from(0) {
        return Err(LinalgError::BadRational(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed rational literal: {0:?}")]
    BadRational(String),
}
