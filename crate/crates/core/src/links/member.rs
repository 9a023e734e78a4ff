//! Seeded random members of the family X(12,14) ⊂ P(1,2,3,4,7,11).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LinksError;
use crate::ambient::{WciSpec, Wps};
use crate::qpoly::{parse_monomial, Coefficient, Monomial, QPoly};

pub const X1214_WEIGHTS: [i64; 6] = [1, 2, 3, 4, 7, 11];
pub const X1214_NAMES: [&str; 6] = ["x", "y", "z", "t", "v", "w"];

pub fn x1214_ambient() -> Wps {
    Wps::new(&X1214_WEIGHTS, &X1214_NAMES).expect("positive weights")
}

/// All monomials of weighted degree `d`.
pub fn monomials_of_degree(weights: &[i64], d: i64) -> Vec<Monomial> {
    fn go(weights: &[i64], k: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e as i64 * weights[k] <= left {
            cur.push(e);
            go(weights, k + 1, left - e as i64 * weights[k], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Default)]
pub struct MemberOptions {
    /// Drop `yzv` from the degree-12 equation.
    pub lambda_zero: bool,
    /// Monomials removed from each equation.
    pub drop: [Vec<String>; 2],
}

impl MemberOptions {
    pub fn lambda_zero() -> Self {
        MemberOptions { lambda_zero: true, ..Default::default() }
    }
}

/// Every monomial of degree 12 and 14 with a uniform nonzero coefficient in `F_p`.
pub fn random_member(seed: u64, prime: u64, options: &MemberOptions) -> Result<WciSpec, LinksError> {
    let p = x1214_ambient();
    let ring = p.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drops: Vec<Vec<Monomial>> = Vec::new();
    for (k, list) in options.drop.iter().enumerate() {
        let mut v = list.iter().map(|m| parse_monomial(m, &ring)).collect::<Result<Vec<_>, _>>()?;
        if k == 0 && options.lambda_zero {
            v.push(parse_monomial("y*z*v", &ring)?);
        }
        drops.push(v);
    }
    let mut eqs = Vec::new();
    for (k, d) in [12, 14].into_iter().enumerate() {
        let terms = monomials_of_degree(&X1214_WEIGHTS, d)
            .into_iter()
            .filter(|m| !drops[k].contains(m))
            .map(|m| (m, Coefficient::modular(rng.gen_range(1..prime), prime)))
            .collect::<Vec<_>>();
        eqs.push(QPoly::from_terms(&ring, terms));
    }
    Ok(WciSpec::in_wps(p, eqs, &[12, 14])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        let m = random_member(1, 101, &MemberOptions::lambda_zero()).unwrap();
        assert!(!m.equations[0].contains("y*z*v"));
        assert!(m.equations[0].contains("w*x") && m.equations[1].contains("v^2"));
    }
}
