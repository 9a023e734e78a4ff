//! Lines through the cE6 point of the degree-7 target.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::normal_form::{as_binary_form, nondegeneracy};
use super::sigma::NormalFormHatX;
use super::LinksError;
use crate::qpoly::fp_univariate::roots;
use crate::qpoly::{parse, substitute, Coefficient, Field, QPoly, Ring, Substitution};

#[derive(Clone, Debug, Serialize)]
pub struct RootCheck {
    pub alpha: u64,
    /// `c6(1, alpha)`, nonzero.
    pub value: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveCertificate {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub mu: Coefficient,
    /// `F(u = 0, y = 0)`, equal to `mu t^3 z`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub coordinate_curves: QPoly,
    /// Coefficient of `z^5` after restricting to a general degree-1 curve.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub top_z_coefficient: QPoly,
    /// Coefficient of `z^4` on the line `u = 0`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub line_z4_coefficient: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub resultant: Coefficient,
    pub prime: u64,
    pub roots: Vec<RootCheck>,
}

const PARAMS: [&str; 14] = ["l1", "l2", "q1", "q2", "q3", "m1", "m2", "n1", "n2", "n3", "c1", "c2", "c3", "c4"];

fn form(ring: &std::sync::Arc<Ring>, coeffs: &[&str], degree: u32) -> QPoly {
    let mut out = QPoly::zero(ring);
    for (i, c) in coeffs.iter().enumerate() {
        let i = i as u32;
        let m = format!("{c}*u^{}*y^{}", degree - i, i);
        out = &out + &parse(&m, ring).expect("fixed text");
    }
    out
}

/// `(t, v) = (z l2 + q1, z^2 l3 + z q2 + c)` with generic forms in `(u, y)`.
fn general_line(f: &QPoly) -> Result<QPoly, LinksError> {
    let mut names: Vec<&str> = vec!["u", "y", "z", "t", "v"];
    names.extend_from_slice(&PARAMS);
    let ring = Ring::new(&names);
    let z = parse("z", &ring)?;
    let l2 = form(&ring, &["l1", "l2"], 1);
    let q1 = form(&ring, &["q1", "q2", "q3"], 2);
    let l3 = form(&ring, &["m1", "m2"], 1);
    let q2 = form(&ring, &["n1", "n2", "n3"], 2);
    let c = form(&ring, &["c1", "c2", "c3", "c4"], 3);
    let t = &(&z * &l2) + &q1;
    let v = &(&(&(&z * &z) * &l3) + &(&z * &q2)) + &c;
    let s = Substitution::with(&ring, &[("t", t), ("v", v)]);
    Ok(substitute(&f.embed(&ring)?, &s)?)
}

pub(crate) fn dense_mod_p(f: &QPoly, var: usize, p: u64) -> Result<Vec<u64>, LinksError> {
    f.coefficients_in(var)
        .iter()
        .map(|c| {
            let c = c.constant_term().into_field(Field::Prime(p));
            c.residue().ok_or_else(|| LinksError::Shape("coefficient outside the field".into()))
        })
        .collect()
}

pub fn exclude_degree_one_curves(hx: &NormalFormHatX, p: u64, seed: u64) -> Result<CurveCertificate, LinksError> {
    let ring = hx.ring.clone();
    let (mu, resultant) = nondegeneracy(&hx.a6, &hx.c6)?;
    if mu.is_zero() {
        return Err(LinksError::Certificate { name: "t^3 in a6".into(), detail: "mu = 0".into() });
    }
    if resultant.is_zero() {
        return Err(LinksError::Certificate { name: "resultant(a6, c6)".into(), detail: "zero".into() });
    }
    let coordinate_curves = hx.equation.set(&[("u", 0), ("y", 0)]);
    if coordinate_curves != parse("t^3*z", &ring)?.scale(&mu) {
        return Err(LinksError::Inconsistency(format!("F(u=0,y=0) = {coordinate_curves}")));
    }

    let restricted = general_line(&hx.equation)?;
    let zi = restricted.ring().idx("z");
    let top = restricted.coefficients_in(zi);
    if top.len() != 6 || top[5] != parse("u^2", restricted.ring())? {
        return Err(LinksError::Inconsistency(format!("z-degree {} on a general line", top.len().saturating_sub(1))));
    }
    let top_z_coefficient = top[5].clone();

    let lr = Ring::new(&["u", "y", "z", "t", "v", "L", "Q"]);
    let on_line = Substitution::with(&lr, &[("t", parse("z*L*y + Q*y^2", &lr)?)]);
    let phi = substitute(&hx.equation.set(&[("u", 0)]).embed(&lr)?, &on_line)?;
    let by_z = phi.coefficients_in(lr.idx("z"));
    let line_z4_coefficient = by_z.get(4).cloned().unwrap_or_else(|| QPoly::zero(&lr));
    if line_z4_coefficient != parse("L^3*y^3", &lr)?.scale(&mu) || by_z.len() != 5 {
        return Err(LinksError::Inconsistency(format!("z^4 coefficient {line_z4_coefficient}")));
    }

    let a = as_binary_form(&hx.a6, "y", "t")?.set(&[("s", 1)]);
    let c = as_binary_form(&hx.c6, "y", "t")?.set(&[("s", 1)]);
    let ti = a.ring().idx("t");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cd = dense_mod_p(&c, ti, p)?;
    let mut checks = Vec::new();
    for alpha in roots(&dense_mod_p(&a, ti, p)?, p, &mut rng) {
        let value = crate::qpoly::fp_univariate::eval(&cd, alpha, p);
        if value == 0 {
            return Err(LinksError::Certificate { name: "common root of a6 and c6".into(), detail: format!("t = {alpha} y^2") });
        }
        checks.push(RootCheck { alpha, value });
    }
    Ok(CurveCertificate {
        mu,
        coordinate_curves,
        top_z_coefficient,
        line_z4_coefficient,
        resultant,
        prime: p,
        roots: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::member::{random_member, MemberOptions};
    use crate::links::normal_form::normal_form_x1214;
    use crate::links::sigma::construct_link_sigma;
    use crate::qpoly::DEFAULT_PRIME;

    #[test]
    fn certificates_on_member() {
        let x = random_member(21, DEFAULT_PRIME, &MemberOptions::default()).unwrap();
        let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
        let hx = construct_link_sigma(&nf).unwrap().hat_x;
        let c = exclude_degree_one_curves(&hx, DEFAULT_PRIME, 0).unwrap();
        assert_eq!(c.top_z_coefficient.to_string(), "u^2");
        assert!(!c.mu.is_zero());
        for r in &c.roots {
            let a = as_binary_form(&hx.a6, "y", "t").unwrap().set(&[("s", 1)]);
            let v = a.evaluate(&[Coefficient::modular(1, DEFAULT_PRIME), Coefficient::modular(r.alpha, DEFAULT_PRIME)]).unwrap();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn common_root_is_caught() {
        let x = random_member(22, DEFAULT_PRIME, &MemberOptions::default()).unwrap();
        let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
        let mut hx = construct_link_sigma(&nf).unwrap().hat_x;
        let r = hx.ring.clone();
        hx.a6 = parse("t^3 - y^2*t^2", &r).unwrap();
        hx.c6 = parse("t^3 - y^6", &r).unwrap();
        hx.equation = hx.reassemble();
        assert!(matches!(exclude_degree_one_curves(&hx, DEFAULT_PRIME, 0), Err(LinksError::Certificate { .. })));
    }
}
