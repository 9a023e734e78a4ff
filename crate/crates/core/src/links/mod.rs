//! Pipelines for X(12,14) ⊂ P(1,2,3,4,7,11) and the degree-7 hypersurface it links to.

pub mod classify;
pub mod curves;
pub mod exclusion;
pub mod hat_x;
pub mod involution;
pub mod member;
pub mod normal_form;
pub mod report;
pub mod sigma;

use thiserror::Error;

use crate::ambient::AmbientError;
use crate::qpoly::PolyError;
use crate::singular::SingularError;

pub use classify::{classify_links, Classification, ClassifyOptions};
pub use curves::{exclude_degree_one_curves, CurveCertificate};
pub use exclusion::{run_exclusion_blowups, Exclusions};
pub use hat_x::{condition_check, singularity_census_hat_x, ConditionReport, HatXCensus};
pub use involution::{build_involutions, sample_point, verify_involution, Involutions, RationalMap};
pub use member::{random_member, x1214_ambient, MemberOptions};
pub use normal_form::{normal_form_x1214, CoordinateChange, NormalFormX1214};
pub use report::{LinkReport, LinkVerdict};
pub use sigma::{construct_link_sigma, hat_x_ambient, NormalFormHatX, SigmaLink};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinksError {
    /// A genericity certificate failed: the member is rejected.
    #[error("certificate `{name}` failed: {detail}")]
    Certificate { name: String, detail: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error(transparent)]
    Singular(#[from] SingularError),
}
