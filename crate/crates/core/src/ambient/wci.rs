//! Weighted complete intersections in a weighted projective space or a rank-2 toric variety.

use std::sync::Arc;

use serde::Serialize;

use super::toric::Rank2Toric;
use super::wps::Wps;
use super::AmbientError;
use crate::qpoly::{QPoly, Rat, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Ambient {
    Wps(Wps),
    Toric(Rank2Toric),
}

impl Ambient {
    pub fn names(&self) -> &[String] {
        match self {
            Ambient::Wps(p) => &p.names,
            Ambient::Toric(t) => &t.names,
        }
    }

    pub fn ring(&self) -> Arc<Ring> {
        Ring::new(self.names())
    }

    pub fn as_wps(&self) -> Option<&Wps> {
        match self {
            Ambient::Wps(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WciSpec {
    pub ambient: Ambient,
    #[serde(serialize_with = "crate::report::ser_displays")]
    pub equations: Vec<QPoly>,
    /// One entry per equation: a degree on a WPS, a bidegree on a toric variety.
    pub degrees: Vec<Vec<i64>>,
}

impl WciSpec {
    pub fn new(ambient: Ambient, equations: Vec<QPoly>, degrees: Vec<Vec<i64>>) -> Result<Self, AmbientError> {
        let s = WciSpec { ambient, equations, degrees };
        s.validate()?;
        Ok(s)
    }

    pub fn in_wps(p: Wps, equations: Vec<QPoly>, degrees: &[i64]) -> Result<Self, AmbientError> {
        Self::new(Ambient::Wps(p), equations, degrees.iter().map(|d| vec![*d]).collect())
    }

    pub fn ring(&self) -> Arc<Ring> {
        self.equations.first().map(|f| f.ring().clone()).unwrap_or_else(|| self.ambient.ring())
    }

    pub fn wps(&self) -> Option<&Wps> {
        self.ambient.as_wps()
    }

    /// Each equation is quasi-homogeneous of its declared degree.
    pub fn validate(&self) -> Result<(), AmbientError> {
        if self.equations.len() != self.degrees.len() {
            return Err(AmbientError::Invalid(format!(
                "{} equations but {} degrees",
                self.equations.len(),
                self.degrees.len()
            )));
        }
        for (k, (f, d)) in self.equations.iter().zip(&self.degrees).enumerate() {
            if f.ring().names() != self.ambient.names() {
                return Err(AmbientError::Invalid(format!("equation {k} lives in a different ring")));
            }
            let gradings = match &self.ambient {
                Ambient::Wps(p) => vec![p.grading()],
                Ambient::Toric(t) => vec![t.row(0), t.row(1)],
            };
            if gradings.len() != d.len() {
                return Err(AmbientError::Invalid(format!("equation {k}: degree has the wrong length")));
            }
            for (g, want) in gradings.iter().zip(d) {
                if !f.is_quasi_homogeneous(g, Rat::from_integer(*want)) {
                    return Err(AmbientError::NotQuasiHomogeneous { equation: k, degree: d.clone() });
                }
            }
        }
        Ok(())
    }
}
