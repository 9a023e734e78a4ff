//! Weighted projective spaces, rank-2 toric varieties and the 2-ray game.

pub mod cone;
pub mod game;
pub mod toric;
pub mod wci;
pub mod wps;

use thiserror::Error;

pub use cone::{cone_calculus, ConeReport};
pub use game::{run_two_ray_game, LinkTrace, Wall, WallKind, WallLocus};
pub use toric::{blowup_ambient, ConeZ2, Rank2Toric, Vec2};
pub use wci::{Ambient, WciSpec};
pub use wps::{analyze_ambient, AmbientAnalysis, Wps};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmbientError {
    #[error("non-positive weight {0}")]
    NonPositiveWeight(i64),
    #[error("invalid ambient: {0}")]
    Invalid(String),
    #[error("degenerate matrix: {0}")]
    Degenerate(String),
    #[error("equation {equation} is not quasi-homogeneous of degree {degree:?}")]
    NotQuasiHomogeneous { equation: usize, degree: Vec<i64> },
}
