//! Singular points of the degree-7 target and the normal-form condition at its cE6 point.

use serde::Serialize;

use super::sigma::NormalFormHatX;
use super::LinksError;
use crate::qpoly::irreducible::{irreducibility_verdict, Verdict};
use crate::qpoly::{parse, Coefficient, QPoly, Rat, Ring, WeightVector};
use crate::singular::{analyze_ce6_germ, singularity_census, Census, GermAnalysis, GermClass, SingularityKind};

#[derive(Clone, Debug, Serialize)]
pub struct HatXCensus {
    pub census: Census,
    /// `F(z = 1)` in the germ coordinates `(x,y,z,t) = (u,t,y,v)`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub local_equation: QPoly,
    pub germ: GermAnalysis,
}

impl HatXCensus {
    pub fn labels(&self) -> Vec<(String, String)> {
        self.census
            .points
            .iter()
            .filter(|r| r.is_singular())
            .map(|r| {
                let kind = match &r.kind {
                    SingularityKind::Quotient { canonical, .. } => canonical.to_string(),
                    SingularityKind::NonQuasismooth { germ_class: GermClass::CE6 } => "cE6".into(),
                    SingularityKind::NonQuasismooth { .. } => "non-quasismooth".into(),
                    SingularityKind::Smooth => "smooth".into(),
                };
                (r.point.clone(), kind)
            })
            .collect()
    }
}

pub fn singularity_census_hat_x(hx: &NormalFormHatX, samples: usize, seed: u64, p: u64) -> Result<HatXCensus, LinksError> {
    let spec = hx.spec();
    let mut census = singularity_census(&spec, samples, seed, p)?;
    let expected = [("p_t", "1/2(1,1,1)"), ("p_v", "1/3(1,1,2)")];
    for (point, q) in expected {
        let r = census.points.iter().find(|r| r.point == point).ok_or_else(|| LinksError::Inconsistency(format!("{point} is not on the variety")))?;
        match r.quotient() {
            Some(s) if s.to_string() == q => {}
            other => return Err(LinksError::Inconsistency(format!("{point}: expected {q}, found {other:?}"))),
        }
    }
    let bad: Vec<&str> = census
        .points
        .iter()
        .filter(|r| matches!(r.kind, SingularityKind::NonQuasismooth { .. }) && r.point != "p_z")
        .map(|r| r.point.as_str())
        .collect();
    if !bad.is_empty() || !census.clean() {
        return Err(LinksError::Inconsistency(format!("extra non-quasismooth locus: {bad:?}")));
    }
    let ring = hx.ring.clone();
    let rest = &hx.equation - &parse("v^2*u", &ring)?;
    let square = [ring.idx("u"), ring.idx("y"), ring.idx("t")];
    if !rest.in_power_of_variable_ideal(&square, 2) {
        return Err(LinksError::Inconsistency("F - v^2*u is not in (u,y,t)^2".into()));
    }
    let germ_ring = Ring::new(&["x", "y", "z", "t"]);
    let local_equation = hx.equation.set(&[("z", 1)]).rename(&germ_ring, &[("u", "x"), ("t", "y"), ("y", "z"), ("v", "t")])?;
    let germ = analyze_ce6_germ(&local_equation, 5, seed)?;
    let q = census.points.iter_mut().find(|r| r.point == "p_z").ok_or_else(|| LinksError::Inconsistency("p_z is not on the variety".into()))?;
    match q.kind {
        SingularityKind::NonQuasismooth { ref mut germ_class } => *germ_class = germ.germ_type,
        _ => return Err(LinksError::Inconsistency("p_z is quasismooth".into())),
    }
    Ok(HatXCensus { census, local_equation, germ })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// Decompositions `F_{w1=6} = βw²y + γx²yzw + x³y·g2 + x·g6` and `F_{w2'=6} = yH + x·g6`.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionDecomposition {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub alpha: Coefficient,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub beta: Coefficient,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub gamma: Coefficient,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub g2: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub g6: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub h: QPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    /// The equation in `(x,y,z,t,w)` with `p_x` the cE6 point.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub equation: QPoly,
    pub checks: Vec<ConditionCheck>,
    pub irreducibility: Verdict,
    pub decomposition: ConditionDecomposition,
    /// `F_{w2'=4}` has no `x^2yzw` term.
    pub literal_shape: bool,
    pub weight5_vanishes: bool,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub const CONDITION_NAMES: [&str; 5] = ["x", "y", "z", "t", "w"];

pub fn condition_ring() -> std::sync::Arc<Ring> {
    Ring::new(&CONDITION_NAMES)
}

/// Moves the cE6 point of `hx` to `p_x`.
pub fn condition_coordinates(hx: &NormalFormHatX) -> Result<QPoly, LinksError> {
    Ok(hx.equation.rename(&condition_ring(), &[("u", "y"), ("y", "z"), ("z", "x"), ("v", "w")])?)
}

pub fn first_weight() -> WeightVector {
    WeightVector::integral(vec![0, 4, 1, 2, 1])
}

pub fn second_weight() -> WeightVector {
    WeightVector::integral(vec![0, 2, 1, 2, 1])
}

fn check(checks: &mut Vec<ConditionCheck>, name: &str, holds: bool, detail: String) {
    checks.push(ConditionCheck { name: name.into(), holds, detail });
}

/// Runs every sub-check; fails with the first failing check's name.
pub fn condition_check(hx: &NormalFormHatX, trials: u32, seed: u64) -> Result<ConditionReport, LinksError> {
    condition_check_equation(&condition_coordinates(hx)?, trials, seed)
}

pub fn condition_check_equation(f: &QPoly, trials: u32, seed: u64) -> Result<ConditionReport, LinksError> {
    let ring = condition_ring();
    let f = f.embed(&ring)?;
    let px = |s: &str| parse(s, &ring).expect("fixed text");
    let mut checks = Vec::new();
    let (w1, w2) = (first_weight(), second_weight());
    check(&mut checks, "p_x on X", f.coefficient_of("x^7").is_zero(), format!("x^7 coefficient {}", f.coefficient_of("x^7")));
    let order1 = f.w_order(&w1);
    check(&mut checks, "w1 order 6", order1 == Some(Rat::from_integer(6)), format!("{order1:?}"));
    let f6 = f.w_component(&w1, Rat::from_integer(6));
    let irreducibility = irreducibility_verdict(&f6.set(&[("x", 1)]), trials, seed);
    check(&mut checks, "F_{w1=6} irreducible", irreducibility.is_irreducible(), format!("{irreducibility:?}"));
    let order2 = f.w_order(&w2);
    check(&mut checks, "w2' order 4", order2 == Some(Rat::from_integer(4)), format!("{order2:?}"));
    let f4 = f.w_component(&w2, Rat::from_integer(4));
    let alpha = f4.coefficient_of("x^5*y^2");
    let beta = f4.coefficient_of("y*w^2");
    let gamma4 = f4.coefficient_of("x^2*y*z*w");
    let literal = &(&px("x^5*y^2").scale(&alpha) + &px("y*w^2").scale(&beta));
    let literal_shape = literal == &f4;
    let shape = &(literal + &px("x^2*y*z*w").scale(&gamma4)) == &f4;
    check(&mut checks, "F_{w2'=4} = αx^5y^2 + γx^2yzw + βyw^2", shape && !alpha.is_zero() && !beta.is_zero(), format!("{f4}"));
    let f5 = f.w_component(&w2, Rat::from_integer(5));
    let weight5_vanishes = f5.is_zero();
    check(&mut checks, "F_{w2'=5} in (y)", f5.exact_div(&px("y")).is_some(), format!("{f5}"));
    check(&mut checks, "t^3 x in F", f.contains("t^3*x"), format!("coefficient {}", f.coefficient_of("t^3*x")));

    let xi = ring.idx("x");
    let x1: Vec<_> = f6.terms().filter(|(m, _)| m.exponents()[xi] == 1).map(|(m, c)| (m.clone(), c.clone())).collect();
    let g6 = QPoly::from_terms(&ring, x1).exact_div(&px("x")).unwrap_or_else(|| QPoly::zero(&ring));
    let gamma = f6.coefficient_of("x^2*y*z*w");
    let known = &(&(&px("w^2*y").scale(&f6.coefficient_of("w^2*y")) + &px("x^2*y*z*w").scale(&gamma)) + &(&px("x") * &g6));
    let rest = &f6 - known;
    let g2 = rest.exact_div(&px("x^3*y"));
    let g6_ok = !g6.is_zero() && g6.variables().iter().all(|&k| ["z", "t"].contains(&CONDITION_NAMES[k]));
    check(&mut checks, "g6(z,t) nonzero", g6_ok, format!("{g6}"));
    check(&mut checks, "F_{w1=6} decomposition", g2.is_some(), format!("remainder {rest}"));
    let f6b = f.w_component(&w2, Rat::from_integer(6));
    let h = (&f6b - &(&px("x") * &g6)).exact_div(&px("y"));
    check(&mut checks, "F_{w2'=6} = yH + x g6", h.is_some(), format!("{f6b}"));

    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(LinksError::Certificate { name: c.name.clone(), detail: c.detail.clone() });
    }
    let decomposition = ConditionDecomposition {
        alpha,
        beta,
        gamma,
        g2: g2.expect("checked"),
        g6,
        h: h.expect("checked"),
    };
    Ok(ConditionReport { equation: f, checks, irreducibility, decomposition, literal_shape, weight5_vanishes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::member::{random_member, MemberOptions};
    use crate::links::normal_form::normal_form_x1214;
    use crate::links::sigma::construct_link_sigma;
    use crate::qpoly::DEFAULT_PRIME;

    fn hat(seed: u64, o: &MemberOptions) -> NormalFormHatX {
        let x = random_member(seed, DEFAULT_PRIME, o).unwrap();
        let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
        construct_link_sigma(&nf).unwrap().hat_x
    }

    #[test]
    fn census_of_target() {
        let hx = hat(5, &MemberOptions::default());
        let c = singularity_census_hat_x(&hx, 20, 1, DEFAULT_PRIME).unwrap();
        let labels = c.labels();
        assert!(labels.contains(&("p_t".into(), "1/2(1,1,1)".into())));
        assert!(labels.contains(&("p_v".into(), "1/3(1,1,2)".into())));
        assert!(labels.contains(&("p_z".into(), "cE6".into())));
        assert_eq!(labels.len(), 3);
        assert_eq!(c.germ.count, 4);
        let c0 = singularity_census_hat_x(&hat(6, &MemberOptions::lambda_zero()), 20, 1, DEFAULT_PRIME).unwrap();
        assert_eq!(c0.germ.count, 3);
    }

    #[test]
    fn condition_holds_on_member() {
        let hx = hat(7, &MemberOptions::default());
        let r = condition_check(&hx, 5, 0).unwrap();
        assert!(r.holds());
        assert_eq!(r.decomposition.beta, hx.equation.coefficient_of("v^2*u"));
        assert_eq!(r.decomposition.gamma, hx.lambda);
        assert!(!r.decomposition.g6.is_zero());
        assert!(!r.literal_shape);
        assert!(!r.weight5_vanishes);
        let r0 = condition_check(&hat(8, &MemberOptions::lambda_zero()), 5, 0).unwrap();
        assert!(r0.literal_shape && r0.decomposition.gamma.is_zero());
    }

    #[test]
    fn condition_gate_names_failure() {
        let hx = hat(7, &MemberOptions::default());
        let f = &condition_coordinates(&hx).unwrap() + &parse("x^4*y*z^2", &condition_ring()).unwrap();
        match condition_check_equation(&f, 5, 0) {
            Err(LinksError::Certificate { name, .. }) => assert_eq!(name, "F_{w2'=4} = αx^5y^2 + γx^2yzw + βyw^2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn target_ambient_weights() {
        assert_eq!(crate::links::hat_x_ambient().weights, vec![1, 1, 1, 2, 3]);
    }
}
