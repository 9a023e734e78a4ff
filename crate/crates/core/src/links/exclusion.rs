//! The two weighted blowups of the cE6 point that are not Sarkisov extractions.

use serde::Serialize;

use super::hat_x::{condition_check, condition_ring, second_weight, ConditionReport, CONDITION_NAMES};
use super::report::{LinkReport, LinkVerdict};
use super::sigma::{describe, restrict, NormalFormHatX};
use super::LinksError;
use crate::ambient::{blowup_ambient, cone_calculus, run_two_ray_game, Ambient, ConeReport, LinkTrace, WallKind, WallLocus, WciSpec, Wps};
use crate::qpoly::{parse, toric_transform, QPoly, Rat, Ring, WeightVector};
use crate::singular::{weighted_blowup_discrepancy, Germ};

/// Whether the restricted equations force the single wall variable to vanish.
fn wall_variable_forced(eqs: &[QPoly], wall_vars: &[String]) -> Option<String> {
    if wall_vars.len() != 1 {
        return None;
    }
    let ring = eqs.first()?.ring().clone();
    let v = ring.idx(&wall_vars[0]);
    eqs.iter().find(|f| f.len() == 1 && f.variables() == vec![v]).map(|f| format!("{f} = 0 forces {} = 0", wall_vars[0]))
}

/// Runs the game of `blowup` and records the loci of every small wall.
pub fn restricted_game(blowup: &crate::ambient::Rank2Toric, eqs: &[QPoly]) -> Result<LinkTrace, LinksError> {
    let mut trace = run_two_ray_game(blowup)?;
    for (i, wall) in trace.walls.clone().iter().enumerate() {
        if !wall.is_small() {
            continue;
        }
        let near_zero: Vec<&str> = wall.beyond.iter().map(String::as_str).collect();
        let far_zero: Vec<&str> = wall.before.iter().map(String::as_str).collect();
        let near = restrict(eqs, &near_zero);
        let far = restrict(eqs, &far_zero);
        let forced = wall_variable_forced(&near, &wall.variables);
        let certificate = match (&forced, near.is_empty()) {
            (Some(c), _) => c.clone(),
            (None, true) => "every equation vanishes on the stratum".into(),
            (None, false) => "restricted equations leave the wall variables free".into(),
        };
        trace.loci.push(WallLocus {
            wall: i,
            near: describe(&near_zero, &near),
            far: describe(&far_zero, &far),
            near_empty: Some(forced.is_some()),
            restricts_to_isomorphism: Some(forced.is_some()),
            certificate,
        });
    }
    Ok(trace)
}

fn boundary_verdict(cones: &ConeReport, trace: &LinkTrace) -> LinkVerdict {
    let divisorial = matches!(trace.final_wall().kind, WallKind::Divisorial { .. });
    if cones.anticanonical_in_interior && divisorial {
        return LinkVerdict::NotSarkisov { certificate: "no exclusion certificate; -K is interior".into() };
    }
    let (c, d) = cones.anticanonical;
    LinkVerdict::NotSarkisov {
        certificate: format!(
            "-K = ({c},{d}) lies on the boundary of the movable cone [{:?}, {:?}]",
            cones.mov.rays[0], cones.mov.rays[1]
        ),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Exclusions {
    pub condition: ConditionReport,
    pub first: LinkReport,
    pub second: LinkReport,
    /// The codimension-2 model used by the second blowup.
    pub reembedding: WciSpec,
}

pub const FIRST_WEIGHTS: [i64; 4] = [4, 1, 2, 1];
pub const SECOND_WEIGHTS: [i64; 5] = [2, 1, 2, 1, 4];

fn hypersurface_ambient() -> Wps {
    Wps::new(&[1, 1, 1, 2, 3], &CONDITION_NAMES).expect("positive")
}

fn blowup_report(
    name: &str,
    p: &Wps,
    eqs: &[QPoly],
    b: &[i64],
    seed: u64,
) -> Result<(LinkReport, Option<LinkVerdict>), LinksError> {
    let local_ring = Ring::new(&p.names[1..]);
    let local: Vec<QPoly> = eqs.iter().map(|f| f.set(&[("x", 1)]).embed(&local_ring)).collect::<Result<_, _>>()?;
    let extraction = weighted_blowup_discrepancy(&Germ::new(&local_ring, local), &WeightVector::integral(b.to_vec()), 5, seed)?;
    let blowup = blowup_ambient(p, "x", b, "u")?;
    let mut full = vec![0];
    full.extend_from_slice(b);
    let w = WeightVector::integral(full);
    let toric_ring = blowup.ring();
    let mut transported = Vec::new();
    let mut degrees = Vec::new();
    for f in eqs {
        let d = f.w_degree(&p.grading()).ok_or_else(|| LinksError::Shape("zero equation".into()))?.to_integer();
        let order = f.w_order(&w).ok_or_else(|| LinksError::Shape("zero equation".into()))?;
        transported.push(toric_transform(f, &w, "u")?.embed(&toric_ring)?);
        degrees.push(vec![d, order.to_integer()]);
    }
    let restricted = WciSpec::new(Ambient::Toric(blowup.clone()), transported.clone(), degrees)?;
    let trace = restricted_game(&blowup, &transported)?;
    let cones = cone_calculus(&trace, &restricted, Some("z"))?;
    let verdict = boundary_verdict(&cones, &trace);
    let interior = cones.anticanonical_in_interior;
    Ok((
        LinkReport {
            name: name.into(),
            center: "p_x".into(),
            extraction: Some(extraction),
            trace: Some(trace),
            cones: Some(cones),
            verdict: verdict.clone(),
        },
        interior.then_some(verdict),
    ))
}

/// `F = y·h + G` with `y·h` the part of `F` of w2'-weight at most 5.
pub fn reembed(condition: &ConditionReport) -> Result<WciSpec, LinksError> {
    let f = &condition.equation;
    let ring = condition_ring();
    let w2 = second_weight();
    let low = &f.w_component(&w2, Rat::from_integer(4)) + &f.w_component(&w2, Rat::from_integer(5));
    let y = parse("y", &ring)?;
    let h = low.exact_div(&y).ok_or_else(|| LinksError::Certificate { name: "F_{w2'<=5} in (y)".into(), detail: low.to_string() })?;
    let g = f - &(&y * &h);
    let big = Wps::new(&[1, 1, 1, 2, 3, 6], &["x", "y", "z", "t", "w", "s"])?;
    let r = big.ring();
    let (h, g) = (h.embed(&r)?, g.embed(&r)?);
    let f1 = &parse("y*s", &r)? + &g;
    let f2 = &parse("s", &r)? - &h;
    Ok(WciSpec::in_wps(big, vec![f1, f2], &[7, 6])?)
}

pub fn run_exclusion_blowups(hx: &NormalFormHatX, seed: u64) -> Result<Exclusions, LinksError> {
    let condition = condition_check(hx, 5, seed)?;
    let (first, open1) = blowup_report("first exclusion (4,1,2,1)", &hypersurface_ambient(), std::slice::from_ref(&condition.equation), &FIRST_WEIGHTS, seed)?;
    let reembedding = reembed(&condition)?;
    let big = reembedding.wps().expect("wps").clone();
    let (second, open2) = blowup_report("second exclusion (2,1,2,1,4)", &big, &reembedding.equations, &SECOND_WEIGHTS, seed)?;
    if open1.is_some() || open2.is_some() {
        return Err(LinksError::Certificate {
            name: "cone boundary".into(),
            detail: "-K lies in the interior of the movable cone".into(),
        });
    }
    Ok(Exclusions { condition, first, second, reembedding })
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

    fn check(e: &LinkReport, smalls: usize, kinds: &[bool]) {
        let a = e.extraction.as_ref().unwrap();
        assert_eq!(a.discrepancy, Rat::from_integer(1));
        assert!(a.irreducibility.is_irreducible(), "{:?}", a.irreducibility);
        let c = e.cones.as_ref().unwrap();
        assert_eq!(c.mov.rays, [(1, 0), (1, 1)]);
        assert_eq!(c.anticanonical, (1, 1));
        assert!(c.anticanonical_on_boundary && c.anticanonical_is_distinguished);
        let t = e.trace.as_ref().unwrap();
        assert_eq!(t.small_wall_count(), smalls);
        let iso: Vec<bool> = t.loci.iter().map(|l| l.restricts_to_isomorphism.unwrap()).collect();
        assert_eq!(iso, kinds);
        assert!(matches!(t.final_wall().kind, WallKind::Divisorial { ref contracted, .. } if contracted == "y"));
        assert!(matches!(e.verdict, LinkVerdict::NotSarkisov { .. }));
    }

    #[test]
    fn both_exclusions() {
        for (seed, o) in [(3, MemberOptions::default()), (4, MemberOptions::lambda_zero())] {
            let ex = run_exclusion_blowups(&hat(seed, &o), 0).unwrap();
            check(&ex.first, 1, &[false]);
            check(&ex.second, 2, &[true, false]);
            assert_eq!(ex.second.extraction.as_ref().unwrap().orders, vec![6, 2]);
        }
    }

    #[test]
    fn second_exceptional_model_at_w_zero() {
        let ex = run_exclusion_blowups(&hat(3, &MemberOptions::default()), 0).unwrap();
        let red = ex.second.extraction.as_ref().unwrap().reduced_model.clone().unwrap();
        assert_eq!(red.eliminated, "y");
        let g6 = &ex.condition.decomposition.g6;
        let at = red.equation.set(&[("w", 0)]);
        assert_eq!(at.to_string(), g6.set(&[("x", 1)]).embed(red.equation.ring()).unwrap().to_string());
        let d = &ex.condition.decomposition;
        assert_eq!(red.equation.coefficient_of("w^2*s"), -(&d.beta * &d.alpha.inv()));
    }
}
