//! Quasismoothness, cyclic quotient points, weighted-blowup discrepancies and
//! the cA/2 and cE6 germ analyses.

pub mod census;
pub mod discrepancy;
pub mod germs;
pub mod quasismooth;
pub mod quotient;

use thiserror::Error;

use crate::ambient::AmbientError;
use crate::qpoly::PolyError;

pub use census::{classify_quotient_singularity, singularity_census, Census, GermClass, SingularityKind, SingularityReport};
pub use discrepancy::{weighted_blowup_discrepancy, DiscrepancyRecord, Germ};
pub use germs::{analyze_ca2_germ, analyze_ce6_germ, DivisorRow, GermAnalysis};
pub use involution_test::{quadratic_involution_test, InvolutionVerdict, QuadraticDecomposition};
pub use quasismooth::{quasismooth_check, Location, QsmVerdict};
pub use quotient::QuotientSingularity;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0} is not on the variety")]
    NotOnVariety(String),
    #[error("not quasismooth at {0}")]
    NotQuasismooth(String),
    #[error("could not resolve: {0}")]
    Unresolved(String),
    #[error("degenerate center: {0}")]
    Degenerate(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ambient(#[from] AmbientError),
}
