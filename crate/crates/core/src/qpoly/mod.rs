//! Exact polynomial arithmetic.

pub mod coefficient;
pub mod fp_univariate;
pub mod gcd;
pub mod irreducible;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod substitution;

use thiserror::Error;

pub use coefficient::{Coefficient, Field, DEFAULT_PRIME};
pub use irreducible::{irreducibility_verdict, Verdict};
pub use parse::{parse, parse_monomial};
pub use poly::{Monomial, QPoly, Rat, Ring, WeightVector};
pub use resultant::resultant;
pub use substitution::{substitute, toric_transform, Substitution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomials live in different ambients")]
    AmbientMismatch,
    #[error("non-integral exponent {0} in toric transform")]
    NonIntegralExponent(String),
}

/// Jacobian matrix: row `j` holds the partials of `fs[j]`.
pub fn jacobian(fs: &[QPoly]) -> Vec<Vec<QPoly>> {
    fs.iter().map(|f| (0..f.ring().len()).map(|i| f.derivative(i)).collect()).collect()
}
