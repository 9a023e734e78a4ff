//! Input files: one weighted complete intersection, or a seeded random member.

use std::collections::BTreeSet;
use std::path::Path;

use birat::ambient::{WciSpec, Wps};
use birat::links::{random_member, x1214_ambient, MemberOptions};
use birat::qpoly::{parse, Coefficient, Field, QPoly, DEFAULT_PRIME};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct AmbientSpec {
    pub weights: Vec<i64>,
    pub vars: Vec<String>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn field(self) -> Field {
        match self {
            FieldSpec::Q => Field::Rational,
            FieldSpec::Fp(p) => Field::Prime(p),
        }
    }

    /// Prime used for sampling and modular certificates.
    pub fn prime(self) -> u64 {
        match self {
            FieldSpec::Q => DEFAULT_PRIME,
            FieldSpec::Fp(p) => p,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Fp(DEFAULT_PRIME)
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Member {
    #[default]
    Explicit,
    Random,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub ambient: AmbientSpec,
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default)]
    pub degrees: Vec<i64>,
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub member: Member,
}

impl InputSpec {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: InputSpec = serde_json::from_str(text)?;
        spec.check()?;
        Ok(spec)
    }

    /// The random X(12,14) member used when no input file is given.
    pub fn random_x1214(seed: u64) -> Self {
        let p = x1214_ambient();
        InputSpec {
            ambient: AmbientSpec { weights: p.weights.clone(), vars: p.names.clone() },
            equations: Vec::new(),
            degrees: vec![12, 14],
            field: FieldSpec::default(),
            seed,
            member: Member::Random,
        }
    }

    fn check(&self) -> Result<(), CliError> {
        let a = &self.ambient;
        let distinct: BTreeSet<&String> = a.vars.iter().collect();
        if distinct.len() != a.vars.len() {
            return Err(CliError::Validation("variable names must be distinct".into()));
        }
        if self.member == Member::Explicit && self.degrees.len() != self.equations.len() {
            return Err(CliError::Validation(format!(
                "{} equations but {} degrees",
                self.equations.len(),
                self.degrees.len()
            )));
        }
        if let FieldSpec::Fp(p) = self.field {
            if p < 3 || !is_prime(p) {
                return Err(CliError::Validation(format!("{p} is not an odd prime")));
            }
        }
        Ok(())
    }

    pub fn wps(&self) -> Result<Wps, CliError> {
        Ok(Wps::new(&self.ambient.weights, &self.ambient.vars)?)
    }

    /// The variety over `field`; random members need the X(12,14) ambient.
    pub fn variety(&self, field: FieldSpec, seed: u64) -> Result<WciSpec, CliError> {
        let wps = self.wps()?;
        match self.member {
            Member::Explicit => {
                let ring = wps.ring();
                let eqs = self
                    .equations
                    .iter()
                    .map(|e| parse(e, &ring).map(|f| f.into_field(field.field())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(WciSpec::in_wps(wps, eqs, &self.degrees)?)
            }
            Member::Random => {
                if wps != x1214_ambient() {
                    return Err(CliError::Validation("random members live in P(1,2,3,4,7,11) with vars x,y,z,t,v,w".into()));
                }
                let x = random_member(seed, field.prime(), &MemberOptions::default())?;
                match field {
                    FieldSpec::Q => {
                        let lifted = x.equations.iter().map(lift).collect();
                        Ok(WciSpec::in_wps(wps, lifted, &[12, 14])?)
                    }
                    FieldSpec::Fp(_) => Ok(x),
                }
            }
        }
    }
}

/// Integer representatives of a polynomial with residue coefficients.
fn lift(f: &QPoly) -> QPoly {
    let terms = f.terms().map(|(m, c)| (m.clone(), Coefficient::from_i64(c.residue().unwrap_or(0) as i64)));
    QPoly::from_terms(f.ring(), terms).into_field(Field::Rational)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const X1214: &str = r#"{"ambient": {"weights": [1,1,1,2,3], "vars": ["x","y","z","t","w"]},
        "equations": ["w^2*y + x^7 + z^7 + t^3*x"], "degrees": [7], "field": {"Fp": 101}, "seed": 3}"#;

    #[test]
    fn parses_fields_and_defaults() {
        let s = InputSpec::from_json(X1214).unwrap();
        assert_eq!(s.field, FieldSpec::Fp(101));
        assert_eq!(s.member, Member::Explicit);
        let q: InputSpec = serde_json::from_str(&X1214.replace(r#"{"Fp": 101}"#, r#""Q""#)).unwrap();
        assert_eq!(q.field, FieldSpec::Q);
        let v = s.variety(s.field, 0).unwrap();
        assert_eq!(v.equations[0].field(), Field::Prime(101));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(InputSpec::from_json(&X1214.replace(r#""t","w""#, r#""t","t""#)).is_err());
        assert!(InputSpec::from_json(&X1214.replace("[7]", "[7, 8]")).is_err());
        assert!(InputSpec::from_json(&X1214.replace("101", "100")).is_err());
        let s = InputSpec::from_json(&X1214.replace("t^3*x", "t^3")).unwrap();
        assert!(matches!(s.variety(s.field, 0), Err(CliError::Validation(_))));
    }

    #[test]
    fn random_member_lifts_to_rationals() {
        let s = InputSpec::random_x1214(5);
        let v = s.variety(FieldSpec::Q, 5).unwrap();
        assert_eq!(v.equations[0].field(), Field::Rational);
        assert_eq!(v.equations.len(), 2);
    }
}
