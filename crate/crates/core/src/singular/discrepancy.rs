//! Discrepancy of weighted blowups of complete intersection germs, possibly
//! divided by a cyclic group.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::SingularError;
use crate::ambient::{WciSpec, Wps};
use crate::qpoly::irreducible::irreducibility_verdict;
use crate::qpoly::{substitute, QPoly, Rat, Ring, Substitution, Verdict, WeightVector};

/// The germ at the origin of `(f_1 = … = f_m = 0) ⊂ A^n`, optionally modulo
/// `Z_r` acting with the given weights.
#[derive(Clone, Debug)]
pub struct Germ {
    pub ring: Arc<Ring>,
    pub equations: Vec<QPoly>,
    pub quotient: Option<(i64, Vec<i64>)>,
}

impl Germ {
    pub fn new(ring: &Arc<Ring>, equations: Vec<QPoly>) -> Self {
        Germ { ring: ring.clone(), equations, quotient: None }
    }

    pub fn with_quotient(mut self, r: i64, action: &[i64]) -> Self {
        self.quotient = Some((r, action.to_vec()));
        self
    }

    pub fn label(&self) -> String {
        let eqs: Vec<String> = self.equations.iter().map(|f| f.to_string()).collect();
        let body = if eqs.is_empty() { format!("A^{}", self.ring.len()) } else { format!("({} = 0)", eqs.join(" = ")) };
        match &self.quotient {
            Some((r, a)) => {
                let acts: Vec<String> = a.iter().zip(self.ring.names()).map(|(w, n)| format!("{w}_{n}")).collect();
                format!("{body}/Z_{r}({})", acts.join(","))
            }
            None => body,
        }
    }
}

/// Exceptional divisor after eliminating one variable that occurs linearly
/// with a constant coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedModel {
    pub eliminated: String,
    pub ambient: Wps,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub equation: QPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyRecord {
    pub center: String,
    /// Blowup weights `b_i / r`: numerators and the common denominator.
    pub weights: Vec<i64>,
    pub denominator: i64,
    /// Lowest weight (numerator) of each equation.
    pub orders: Vec<i64>,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub discrepancy: Rat,
    pub exceptional_model: WciSpec,
    pub reduced_model: Option<ReducedModel>,
    pub irreducibility: Verdict,
}

fn check_weights(germ: &Germ, b: &WeightVector) -> Result<(), SingularError> {
    let n = germ.ring.len();
    if b.len() != n {
        return Err(SingularError::Invalid(format!("{} weights for {n} variables", b.len())));
    }
    if b.numerators().iter().any(|&x| x <= 0) {
        return Err(SingularError::Invalid("blowup weights must be positive".into()));
    }
    let r = b.denominator();
    match &germ.quotient {
        None if r != 1 => Err(SingularError::Invalid("fractional weights need a quotient germ".into())),
        None => Ok(()),
        Some((q, action)) => {
            if *q != r {
                return Err(SingularError::Invalid(format!("denominator {r} differs from group order {q}")));
            }
            let ok = (1..r).filter(|k| k.gcd(&r) == 1).any(|k| {
                b.numerators().iter().zip(action).all(|(bi, ai)| (bi - k * ai).rem_euclid(r) == 0)
            });
            if ok {
                Ok(())
            } else {
                Err(SingularError::Invalid("weights are not a generator of the group action".into()))
            }
        }
    }
}

/// Eliminates a variable `η` that appears as `c·η + (terms without η)` with
/// constant `c` in one equation, substituting into the others.
fn reduce_model(eqs: &[QPoly], ring: &Arc<Ring>) -> Option<(usize, QPoly)> {
    if eqs.len() != 2 {
        return None;
    }
    for (j, f) in eqs.iter().enumerate() {
        for eta in f.variables() {
            if f.degree_in(eta) != 1 {
                continue;
            }
            let parts = f.coefficients_in(eta);
            if !parts[1].is_constant() || parts[1].is_zero() {
                continue;
            }
            let image = parts[0].scale(&parts[1].constant_term().inv()).scale(&crate::qpoly::Coefficient::from_i64(-1));
            let s = Substitution::with(ring, &[(&ring.names()[eta], image)]);
            let other = substitute(&eqs[1 - j], &s).ok()?;
            return Some((eta, other));
        }
    }
    None
}

/// `a = (Σ b_i − Σ m_j − r) / r` for the weighted blowup with weights `b/r`,
/// where `m_j` is the lowest `b`-weight of the `j`-th equation.
pub fn weighted_blowup_discrepancy(germ: &Germ, b: &WeightVector, trials: u32, seed: u64) -> Result<DiscrepancyRecord, SingularError> {
    check_weights(germ, b)?;
    let r = b.denominator();
    let ring = germ.ring.clone();
    let integral = WeightVector::integral(b.numerators().to_vec());
    let mut orders = Vec::new();
    let mut lowest = Vec::new();
    for (j, f) in germ.equations.iter().enumerate() {
        if f.is_zero() {
            return Err(SingularError::Degenerate(format!("equation {j} is zero")));
        }
        if !f.constant_term().is_zero() {
            return Err(SingularError::NotOnVariety(format!("equation {j} does not vanish at the origin")));
        }
        let m = f.w_order(&integral).expect("nonzero");
        orders.push(m.to_integer());
        lowest.push(f.w_initial(&integral));
    }
    let sum_b: i64 = b.numerators().iter().sum();
    let sum_m: i64 = orders.iter().sum();
    let discrepancy = Rat::new(sum_b - sum_m - r, r);
    let wps = Wps::new(b.numerators(), ring.names()).map_err(SingularError::Ambient)?;
    let degrees: Vec<i64> = orders.clone();
    let exceptional_model = WciSpec::in_wps(wps, lowest.clone(), &degrees)?;
    let reduced = reduce_model(&lowest, &ring);
    let (reduced_model, irreducibility) = match (lowest.len(), reduced) {
        (0, _) => (None, Verdict::Irreducible { witness: "weighted projective space".into() }),
        (1, _) => (None, irreducibility_verdict(&lowest[0], trials, seed)),
        (_, Some((eta, eq))) => {
            let keep: Vec<usize> = (0..ring.len()).filter(|&i| i != eta).collect();
            let names: Vec<String> = keep.iter().map(|&i| ring.names()[i].clone()).collect();
            let sub_ring = Ring::new(&names);
            let eq = eq.embed(&sub_ring)?;
            let weights: Vec<i64> = keep.iter().map(|&i| b.numerators()[i]).collect();
            let verdict = irreducibility_verdict(&eq, trials, seed);
            let ambient = Wps::new(&weights, &names).map_err(SingularError::Ambient)?;
            (Some(ReducedModel { eliminated: ring.names()[eta].clone(), ambient, equation: eq }), verdict)
        }
        _ => (None, Verdict::Unknown { reason: "codimension above one without a linear elimination".into() }),
    };
    Ok(DiscrepancyRecord {
        center: germ.label(),
        weights: b.numerators().to_vec(),
        denominator: r,
        orders,
        discrepancy,
        exceptional_model,
        reduced_model,
        irreducibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse;

    #[test]
    fn kawamata_blowup() {
        let r = Ring::new(&["y", "t", "v"]);
        let g = Germ::new(&r, vec![]).with_quotient(11, &[1, 2, 9]);
        let d = weighted_blowup_discrepancy(&g, &WeightVector::new(vec![1, 2, 9], 11), 5, 0).unwrap();
        assert_eq!(d.discrepancy, Rat::new(1, 11));
    }

    #[test]
    fn ca2_blowup() {
        let r = Ring::new(&["x", "y", "z", "t"]);
        let f = parse("x*y + t^3 + z^6", &r).unwrap();
        let g = Germ::new(&r, vec![f]).with_quotient(2, &[1, 1, 1, 0]);
        let d = weighted_blowup_discrepancy(&g, &WeightVector::new(vec![5, 1, 1, 2], 2), 5, 0).unwrap();
        assert_eq!(d.orders, vec![6]);
        assert_eq!(d.discrepancy, Rat::new(1, 2));
        assert!(d.irreducibility.is_irreducible());
    }

    #[test]
    fn origin_must_lie_on_germ() {
        let r = Ring::new(&["x", "y"]);
        let f = parse("x + 1", &r).unwrap();
        let g = Germ::new(&r, vec![f]);
        assert!(weighted_blowup_discrepancy(&g, &WeightVector::integral(vec![1, 1]), 5, 0).is_err());
    }

    #[test]
    fn action_must_match() {
        let r = Ring::new(&["y", "t", "v"]);
        let g = Germ::new(&r, vec![]).with_quotient(11, &[1, 2, 9]);
        assert!(weighted_blowup_discrepancy(&g, &WeightVector::new(vec![1, 3, 9], 11), 5, 0).is_err());
    }
}
