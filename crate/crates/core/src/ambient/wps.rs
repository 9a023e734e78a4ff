//! Weighted projective spaces.

use std::sync::Arc;

use serde::Serialize;

use super::AmbientError;
use crate::qpoly::poly::gcd_all;
use crate::qpoly::{Rat, Ring, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wps {
    pub weights: Vec<i64>,
    pub names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbientAnalysis {
    pub well_formed: bool,
    pub fano_index: i64,
    /// `A^dim` for the generator `A = O(1)`: product of degrees over product of weights.
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub amplitude: Rat,
}

impl Wps {
    pub fn new<S: AsRef<str>>(weights: &[i64], names: &[S]) -> Result<Self, AmbientError> {
        if weights.len() != names.len() {
            return Err(AmbientError::Invalid(format!(
                "{} weights but {} names",
                weights.len(),
                names.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| **w <= 0) {
            return Err(AmbientError::NonPositiveWeight(*w));
        }
        if weights.len() < 3 {
            return Err(AmbientError::Invalid("need at least three coordinates".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AmbientError::Invalid(format!("duplicate variable {n}")));
            }
        }
        Ok(Wps { weights: weights.to_vec(), names })
    }

    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn ring(&self) -> Arc<Ring> {
        Ring::new(&self.names)
    }

    pub fn grading(&self) -> WeightVector {
        WeightVector::integral(self.weights.clone())
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight(&self, name: &str) -> i64 {
        self.weights[self.index(name).expect("known variable")]
    }

    /// Every `n` of the `n + 1` weights are coprime.
    pub fn is_well_formed(&self) -> bool {
        (0..self.weights.len()).all(|skip| {
            gcd_all(self.weights.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, w)| *w)) == 1
        })
    }

    /// `P(1_u, 6_w, ...)` style label.
    pub fn label(&self) -> String {
        let parts: Vec<String> =
            self.weights.iter().zip(&self.names).map(|(w, n)| format!("{w}_{n}")).collect();
        format!("P({})", parts.join(","))
    }
}

pub fn analyze_ambient(p: &Wps, degrees: &[i64]) -> Result<AmbientAnalysis, AmbientError> {
    if degrees.is_empty() {
        return Err(AmbientError::Invalid("no degrees given".into()));
    }
    if let Some(d) = degrees.iter().find(|d| **d < 1) {
        return Err(AmbientError::Invalid(format!("degree {d} is not positive")));
    }
    let fano_index = p.weights.iter().sum::<i64>() - degrees.iter().sum::<i64>();
    let amplitude = Rat::new(degrees.iter().product(), p.weights.iter().product());
    Ok(AmbientAnalysis { well_formed: p.is_well_formed(), fano_index, amplitude })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices() {
        let p = Wps::new(&[1, 2, 3, 4, 7, 11], &["x", "y", "z", "t", "v", "w"]).unwrap();
        let a = analyze_ambient(&p, &[12, 14]).unwrap();
        assert!(a.well_formed);
        assert_eq!(a.fano_index, 2);
        assert_eq!(a.amplitude, Rat::new(1, 11));
        let q = Wps::new(&[1, 1, 1, 2, 3], &["u", "y", "z", "t", "v"]).unwrap();
        assert_eq!(analyze_ambient(&q, &[7]).unwrap().fano_index, 1);
        let r = Wps::new(&[1; 5], &["a", "b", "c", "d", "e"]).unwrap();
        assert_eq!(analyze_ambient(&r, &[2]).unwrap().fano_index, 3);
        assert!(!Wps::new(&[1, 2, 2], &["a", "b", "c"]).unwrap().is_well_formed());
        assert!(Wps::new(&[0, 1, 1], &["a", "b", "c"]).is_err());
    }
}
