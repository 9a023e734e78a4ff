//! Normal form of the two equations of X(12,14).

use std::sync::Arc;

use serde::Serialize;

use super::member::x1214_ambient;
use super::LinksError;
use crate::ambient::WciSpec;
use crate::qpoly::resultant::binary_form_resultant;
use crate::qpoly::{substitute, Coefficient, Monomial, QPoly, Rat, Ring, Substitution, WeightVector};

/// A change of coordinates together with its inverse.
#[derive(Clone, Debug, Serialize)]
pub struct CoordinateChange {
    pub label: String,
    /// Changed variables and their images.
    pub images: Vec<(String, String)>,
    #[serde(skip)]
    pub forward: Substitution,
    #[serde(skip)]
    pub inverse: Substitution,
}

impl CoordinateChange {
    /// `var ↦ var + delta` with `delta` free of `var`.
    fn shift(label: &str, ring: &Arc<Ring>, var: &str, delta: &QPoly) -> Self {
        let x = QPoly::var(ring, var);
        let img = &x + delta;
        CoordinateChange {
            label: label.into(),
            images: vec![(var.into(), img.to_string())],
            forward: Substitution::with(ring, &[(var, img)]),
            inverse: Substitution::with(ring, &[(var, &x - delta)]),
        }
    }

    fn scale(label: &str, ring: &Arc<Ring>, factors: &[(&str, Coefficient)]) -> Self {
        let fw: Vec<(&str, QPoly)> = factors.iter().map(|(n, c)| (*n, QPoly::var(ring, n).scale(c))).collect();
        let inv: Vec<(&str, QPoly)> = factors.iter().map(|(n, c)| (*n, QPoly::var(ring, n).scale(&c.inv()))).collect();
        CoordinateChange {
            label: label.into(),
            images: fw.iter().map(|(n, p)| (n.to_string(), p.to_string())).collect(),
            forward: Substitution::with(ring, &fw),
            inverse: Substitution::with(ring, &inv),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalFormX1214 {
    #[serde(skip)]
    pub ring: Arc<Ring>,
    #[serde(serialize_with = "crate::report::ser_displays")]
    pub original: Vec<QPoly>,
    /// `F_1 = -wx + a12 + λyzv + z^4 + z^2·y·b4` and `F_2 = wz + y·c12 + v^2 + g14`.
    #[serde(serialize_with = "crate::report::ser_displays")]
    pub equations: Vec<QPoly>,
    pub changes: Vec<CoordinateChange>,
    /// `equations[i] = multipliers[i] · original[i]` after the changes.
    #[serde(serialize_with = "crate::report::ser_displays")]
    pub multipliers: Vec<Coefficient>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub a12: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub b4: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub c12: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub g14: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub lambda: Coefficient,
    /// Coefficient of `t^3` in `a12`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub mu: Coefficient,
    /// Resultant of `a12` and `c12` as cubic forms in `(y^2, t)`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub resultant: Coefficient,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub g14_order: Rat,
}

impl NormalFormX1214 {
    pub fn composite(&self) -> Substitution {
        let mut s = Substitution::identity(&self.ring);
        for c in &self.changes {
            s = s.then(&c.forward).expect("same ring");
        }
        s
    }

    pub fn inverse_composite(&self) -> Substitution {
        let mut s = Substitution::identity(&self.ring);
        for c in self.changes.iter().rev() {
            s = s.then(&c.inverse).expect("same ring");
        }
        s
    }

    pub fn spec(&self) -> WciSpec {
        WciSpec::in_wps(x1214_ambient(), self.equations.clone(), &[12, 14]).expect("normal form is quasi-homogeneous")
    }
}

fn criterion(name: &str, detail: impl Into<String>) -> LinksError {
    LinksError::Certificate { name: name.into(), detail: detail.into() }
}

fn split(f: &QPoly, keep: impl Fn(&Monomial) -> bool) -> (QPoly, QPoly) {
    let a = QPoly::from_terms(f.ring(), f.terms().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())));
    let b = f - &a;
    (a.into_field(f.field()), b)
}

fn var(ring: &Arc<Ring>, n: &str) -> QPoly {
    QPoly::var(ring, n)
}

/// Rewrites a polynomial in `y^2, t` as a form in `(s, t)` with `s = y^2`.
pub fn as_binary_form(f: &QPoly, y: &str, t: &str) -> Result<QPoly, LinksError> {
    let r = Ring::new(&["s", "t"]);
    let (yi, ti) = (f.ring().idx(y), f.ring().idx(t));
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        if e[yi] % 2 != 0 || e.iter().enumerate().any(|(i, &k)| k > 0 && i != yi && i != ti) {
            return Err(LinksError::Shape(format!("{f} is not a polynomial in {y}^2 and {t}")));
        }
        terms.push((Monomial(vec![e[yi] / 2, e[ti]]), c.clone()));
    }
    Ok(QPoly::from_terms(&r, terms).into_field(f.field()))
}

/// `μ` and the resultant certifying that `a12 = y·c12 = 0` has only the trivial solution.
pub fn nondegeneracy(a12: &QPoly, c12: &QPoly) -> Result<(Coefficient, Coefficient), LinksError> {
    let a = as_binary_form(a12, "y", "t")?;
    let c = as_binary_form(c12, "y", "t")?;
    let mu = a12.coefficient_of("t^3");
    let res = binary_form_resultant(&a, &c, 0, 1, 3, 3);
    Ok((mu, res.constant_term()))
}

fn apply(eqs: &mut [QPoly], changes: &mut Vec<CoordinateChange>, c: CoordinateChange) -> Result<(), LinksError> {
    for f in eqs.iter_mut() {
        *f = substitute(f, &c.forward)?;
    }
    changes.push(c);
    Ok(())
}

/// Brings `(F_1, F_2)` of degrees (12, 14) to the normal form and checks the
/// nondegeneracy certificates.
pub fn normal_form_x1214(f1: &QPoly, f2: &QPoly) -> Result<NormalFormX1214, LinksError> {
    let p = x1214_ambient();
    let ring = p.ring();
    if f1.ring().names() != ring.names() || f2.ring().names() != ring.names() {
        return Err(LinksError::Shape("equations must live in (x,y,z,t,v,w)".into()));
    }
    WciSpec::in_wps(p, vec![f1.clone(), f2.clone()], &[12, 14])?;
    let a = f1.coefficient_of("w*x");
    let d = f1.coefficient_of("z^4");
    let c = f2.coefficient_of("w*z");
    let e = f2.coefficient_of("v^2");
    for (name, coef, what) in [
        ("wx in F1", &a, "not quasismooth at p_w"),
        ("wz in F2", &c, "not quasismooth at p_w"),
        ("v^2 in F2", &e, "p_v lies on X and is not quasismooth"),
        ("z^4 in F1", &d, "p_z lies on X and is not quasismooth"),
    ] {
        if coef.is_zero() {
            return Err(criterion(name, what));
        }
    }
    let mut eqs = vec![f1.clone(), f2.clone()];
    let mut changes = Vec::new();

    let wi = ring.idx("w");
    let wpart = eqs[1].coefficients_in(wi).get(1).cloned().unwrap_or_else(|| QPoly::zero(&ring));
    let rest = &wpart - &var(&ring, "z").scale(&c);
    if !rest.is_zero() {
        let delta = -rest.scale(&c.inv());
        apply(&mut eqs, &mut changes, CoordinateChange::shift("absorb the w-terms of F2 into z", &ring, "z", &delta))?;
    }

    let lw = &e * &c.inv();
    let mu1 = d.inv();
    let mu2 = e.inv();
    let lx = -(&(&d * &c) * &(&e * &a).inv());
    apply(&mut eqs, &mut changes, CoordinateChange::scale("normalize wx, z^4, wz, v^2", &ring, &[("x", lx), ("w", lw)]))?;
    eqs[0] = eqs[0].scale(&mu1);
    eqs[1] = eqs[1].scale(&mu2);

    let xi = ring.idx("x");
    let vi = ring.idx("v");
    let two_inv = Coefficient::from_i64(2).inv();
    for round in 0.. {
        if round > 8 {
            return Err(LinksError::Inconsistency("normal form iteration did not stabilize".into()));
        }
        let (xpart, _) = split(&eqs[0], |m| m.exponents()[xi] > 0);
        let xpart = &xpart + &(&var(&ring, "w") * &var(&ring, "x"));
        let absorb = xpart.exact_div(&var(&ring, "x")).expect("divisible by x");
        if !absorb.is_zero() {
            apply(&mut eqs, &mut changes, CoordinateChange::shift("absorb the x-multiples of F1 into w", &ring, "w", &absorb))?;
        }
        let linear = eqs[1].coefficients_in(vi).get(1).cloned().unwrap_or_else(|| QPoly::zero(&ring));
        if !linear.is_zero() {
            let delta = -linear.scale(&two_inv);
            apply(&mut eqs, &mut changes, CoordinateChange::shift("complete the square in v", &ring, "v", &delta))?;
        }
        if absorb.is_zero() && linear.is_zero() {
            break;
        }
    }

    let f12 = &eqs[0] + &(&var(&ring, "w") * &var(&ring, "x"));
    if f12.involves(xi) || f12.involves(wi) {
        return Err(LinksError::Inconsistency(format!("F1 + wx still involves x or w: {f12}")));
    }
    let a12 = f12.set(&[("z", 0), ("v", 0)]);
    let lambda = f12.coefficient_of("y*z*v");
    let yzv = var(&ring, "y") * var(&ring, "z") * var(&ring, "v");
    let z4 = var(&ring, "z").pow(4);
    let rest = &(&(&f12 - &a12) - &yzv.scale(&lambda)) - &z4;
    let z2y = var(&ring, "z").pow(2) * var(&ring, "y");
    let b4 = rest
        .exact_div(&z2y)
        .filter(|q| q.variables().iter().all(|&i| ring.names()[i] == "y" || ring.names()[i] == "t"))
        .ok_or_else(|| LinksError::Inconsistency(format!("unexpected terms in F1: {rest}")))?;
    let v2 = var(&ring, "v").pow(2);
    let wz = var(&ring, "w") * var(&ring, "z");
    let g = &(&eqs[1] - &wz) - &v2;
    if g.involves(vi) || g.involves(wi) {
        return Err(LinksError::Inconsistency(format!("F2 - wz - v^2 still involves v or w: {g}")));
    }
    let yc12 = g.set(&[("x", 0), ("z", 0)]);
    let c12 = yc12.exact_div(&var(&ring, "y")).ok_or_else(|| LinksError::Inconsistency("y does not divide g(0,y,0,t)".into()))?;
    let g14 = &g - &yc12;
    if !g14.in_power_of_variable_ideal(&[xi, ring.idx("z")], 2) {
        return Err(LinksError::Inconsistency("g14 is not in (x,z)^2".into()));
    }
    let order_w = WeightVector::new(vec![6, 1, 7, 2, 0, 0], 11);
    let g14_order = g14.w_order(&order_w).unwrap_or_else(|| Rat::from_integer(2));
    if g14_order < Rat::new(18, 11) {
        return Err(LinksError::Inconsistency(format!("g14 has order {g14_order} < 18/11")));
    }
    let (mu, res) = nondegeneracy(&a12, &c12)?;
    if mu.is_zero() {
        return Err(criterion("t^3 in a12", "a12 = y*c12 = 0 has the solution (0:1)"));
    }
    if res.is_zero() {
        return Err(criterion("resultant(a12, c12)", "a12 and c12 share a root"));
    }
    Ok(NormalFormX1214 {
        ring,
        original: vec![f1.clone(), f2.clone()],
        equations: eqs,
        changes,
        multipliers: vec![mu1, mu2],
        a12,
        b4,
        c12,
        g14,
        lambda,
        mu,
        resultant: res,
        g14_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::member::{random_member, MemberOptions};
    use crate::qpoly::{parse, DEFAULT_PRIME};

    #[test]
    fn random_member_normal_form() {
        let x = random_member(3, DEFAULT_PRIME, &MemberOptions::default()).unwrap();
        let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
        let r = &nf.ring;
        let rebuilt1 = &(&(&(&parse("-w*x + z^4", r).unwrap() + &nf.a12)
            + &parse("y*z*v", r).unwrap().scale(&nf.lambda))
            + &(&parse("z^2*y", r).unwrap() * &nf.b4))
            + &QPoly::zero(r);
        assert_eq!(nf.equations[0], rebuilt1);
        let rebuilt2 = &(&parse("w*z + v^2", r).unwrap() + &(&parse("y", r).unwrap() * &nf.c12)) + &nf.g14;
        assert_eq!(nf.equations[1], rebuilt2);
        assert!(!nf.lambda.is_zero());
        let s = nf.composite();
        for i in 0..2 {
            let moved = substitute(&nf.original[i], &s).unwrap().scale(&nf.multipliers[i]);
            assert_eq!(moved, nf.equations[i]);
            let back = substitute(&nf.equations[i], &nf.inverse_composite()).unwrap().scale(&nf.multipliers[i].inv());
            assert_eq!(back, nf.original[i]);
        }
    }

    #[test]
    fn lambda_zero_and_degenerate() {
        let x = random_member(4, DEFAULT_PRIME, &MemberOptions::lambda_zero()).unwrap();
        let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
        assert!(nf.lambda.is_zero());
        let r = x1214_ambient().ring();
        let f1 = parse("-w*x + t^3 + y^4*t + z^4", &r).unwrap();
        let f2 = parse("w*z + y*t^3 + v^2 + x^14", &r).unwrap();
        match normal_form_x1214(&f1, &f2) {
            Err(LinksError::Certificate { name, .. }) => assert_eq!(name, "resultant(a12, c12)"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
