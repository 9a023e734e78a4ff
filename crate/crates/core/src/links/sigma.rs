//! The link from X(12,14) to a degree-7 hypersurface in P(1,1,1,2,3).

use std::sync::Arc;

use serde::Serialize;

use super::member::x1214_ambient;
use super::normal_form::{nondegeneracy, NormalFormX1214};
use super::LinksError;
use crate::ambient::{blowup_ambient, run_two_ray_game, Ambient, LinkTrace, Rank2Toric, WallKind, WallLocus, WciSpec, Wps};
use crate::qpoly::{substitute, toric_transform, Coefficient, QPoly, Ring, Substitution, WeightVector};
use crate::singular::{classify_quotient_singularity, weighted_blowup_discrepancy, DiscrepancyRecord, Germ, SingularityReport};

pub const HAT_X_NAMES: [&str; 5] = ["u", "y", "z", "t", "v"];

pub fn hat_x_ambient() -> Wps {
    Wps::new(&[1, 1, 1, 2, 3], &HAT_X_NAMES).expect("positive weights")
}

/// `F = (a6 + λyzvu + z^4u^2 + z^2yu·b2)z + y·c6 + v^2u + u·g6` in P(1_u,1_y,1_z,2_t,3_v).
#[derive(Clone, Debug, Serialize)]
pub struct NormalFormHatX {
    #[serde(skip)]
    pub ring: Arc<Ring>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub equation: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub a6: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub b2: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub c6: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub g6: QPoly,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub lambda: Coefficient,
}

fn p(ring: &Arc<Ring>, text: &str) -> QPoly {
    crate::qpoly::parse(text, ring).expect("fixed polynomial text")
}

impl NormalFormHatX {
    /// Reads the pieces off `F`. `b2` is not determined by `F` alone and is
    /// taken as given (zero when absent, with its terms left in `g6`).
    pub fn decompose(f: &QPoly, b2: Option<QPoly>) -> Result<Self, LinksError> {
        let ring = hat_x_ambient().ring();
        if f.ring().names() != ring.names() {
            return Err(LinksError::Shape("F must live in (u,y,z,t,v)".into()));
        }
        WciSpec::in_wps(hat_x_ambient(), vec![f.clone()], &[7])?;
        let vi = ring.idx("v");
        let by_v = f.coefficients_in(vi);
        if by_v.len() != 3 || by_v[2] != p(&ring, "u") {
            return Err(LinksError::Shape(format!("expected v^2*u as the only v^2 term of {f}")));
        }
        let lambda = f.coefficient_of("y*z^2*v*u");
        if by_v[1] != p(&ring, "y*z^2*u").scale(&lambda) {
            return Err(LinksError::Shape("the v-linear part is not λ·y*z^2*u".into()));
        }
        let rest = &by_v[0];
        let at_u0 = rest.set(&[("u", 0)]);
        let zi = ring.idx("z");
        let a6z = QPoly::from_terms(&ring, at_u0.terms().filter(|(m, _)| m.exponents()[zi] > 0).map(|(m, c)| (m.clone(), c.clone())));
        let yc6 = &at_u0 - &a6z;
        let a6 = a6z.exact_div(&p(&ring, "z")).ok_or_else(|| LinksError::Shape("F(u=0) has z^2 terms".into()))?;
        let c6 = yc6.exact_div(&p(&ring, "y")).ok_or_else(|| LinksError::Shape("F(u=0,z=0) is not divisible by y".into()))?;
        let b2 = b2.unwrap_or_else(|| QPoly::zero(&ring)).embed(&ring)?;
        let known = &p(&ring, "z^5*u^2") + &(&p(&ring, "z^3*y*u") * &b2);
        let g6 = (&(rest - &at_u0) - &known)
            .exact_div(&p(&ring, "u"))
            .ok_or_else(|| LinksError::Inconsistency("u does not divide the u-part".into()))?;
        let hx = NormalFormHatX { ring, equation: f.clone(), a6, b2, c6, g6, lambda };
        if hx.reassemble() != *f {
            return Err(LinksError::Inconsistency("decomposition does not reassemble F".into()));
        }
        Ok(hx)
    }

    pub fn reassemble(&self) -> QPoly {
        let r = &self.ring;
        let bracket = &(&(&self.a6 + &p(r, "y*z*v*u").scale(&self.lambda)) + &p(r, "z^4*u^2")) + &(&p(r, "z^2*y*u") * &self.b2);
        &(&(&(&bracket * &p(r, "z")) + &(&p(r, "y") * &self.c6)) + &p(r, "v^2*u")) + &(&p(r, "u") * &self.g6)
    }

    pub fn spec(&self) -> WciSpec {
        WciSpec::in_wps(hat_x_ambient(), vec![self.equation.clone()], &[7]).expect("degree 7")
    }

    /// Coefficient of `t^3` in `a6`.
    pub fn mu(&self) -> Coefficient {
        self.a6.coefficient_of("t^3")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaLink {
    pub center: SingularityReport,
    pub kawamata: DiscrepancyRecord,
    pub blowup: Rank2Toric,
    /// The proper transform, cut out by the transported equations.
    pub proper_transform: WciSpec,
    pub trace: LinkTrace,
    /// Contracted variable and the image point of the final wall.
    pub contracted: String,
    pub image_point: String,
    /// Codimension-2 model of the target before eliminating `w`.
    pub two_equation_model: WciSpec,
    pub hat_x: NormalFormHatX,
}

pub const KAWAMATA_WEIGHTS: [i64; 5] = [6, 1, 7, 2, 9];

/// Equations with the listed variables set to zero, zeros dropped.
pub fn restrict(eqs: &[QPoly], zero: &[&str]) -> Vec<QPoly> {
    eqs.iter()
        .map(|f| f.set(&zero.iter().map(|n| (*n, 0)).collect::<Vec<_>>()))
        .filter(|g| !g.is_zero())
        .collect()
}

pub fn describe(zero: &[&str], eqs: &[QPoly]) -> Vec<String> {
    zero.iter().map(|s| s.to_string()).chain(eqs.iter().map(|f| f.to_string())).collect()
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

pub fn construct_link_sigma(nf: &NormalFormX1214) -> Result<SigmaLink, LinksError> {
    let x = nf.spec();
    let center = classify_quotient_singularity(&x, "w")?;
    let ring = nf.ring.clone();
    let germ_ring = Ring::new(&["x", "y", "z", "t", "v"]);
    let local: Vec<QPoly> = nf.equations.iter().map(|f| f.set(&[("w", 1)]).embed(&germ_ring)).collect::<Result<_, _>>()?;
    let germ = Germ::new(&germ_ring, local).with_quotient(11, &[1, 2, 3, 4, 7]);
    let kawamata = weighted_blowup_discrepancy(&germ, &WeightVector::new(KAWAMATA_WEIGHTS.to_vec(), 11), 5, 0)?;

    let blowup = blowup_ambient(&x1214_ambient(), "w", &KAWAMATA_WEIGHTS, "u")?;
    let toric_ring = blowup.ring();
    let w = WeightVector::new(vec![6, 1, 7, 2, 9, 0], 11);
    let transported: Vec<QPoly> =
        nf.equations.iter().map(|f| toric_transform(f, &w, "u")?.embed(&toric_ring)).collect::<Result<_, _>>()?;
    let proper_transform = WciSpec::new(Ambient::Toric(blowup.clone()), transported.clone(), vec![vec![12, 6], vec![14, 7]])?;
    let mut trace = run_two_ray_game(&blowup)?;

    let (contracted, image_point, target) = match &trace.final_wall().kind {
        WallKind::Divisorial { contracted, center_vars, target, center_dim: 0, .. } if center_vars.len() == 1 => {
            (contracted.clone(), format!("p_{}", center_vars[0]), target.clone())
        }
        k => return Err(LinksError::Shape(format!("final wall is not a contraction to a point: {k:?}"))),
    };
    if contracted != "x" || image_point != "p_z" {
        return Err(LinksError::Shape(format!("final wall contracts ({contracted} = 0) to {image_point}")));
    }

    for i in 0..trace.walls.len() - 1 {
        let wall = trace.walls[i].clone();
        let near_zero = strs(&wall.beyond);
        let far_zero = strs(&wall.before);
        let near = restrict(&transported, &near_zero);
        let far = restrict(&transported, &far_zero);
        let (near_empty, certificate) = if i == 0 {
            let only_yt = near.iter().all(|f| f.variables().iter().all(|&k| ["y", "t"].contains(&toric_ring.names()[k].as_str())));
            let (mu, res) = nondegeneracy(&nf.a12, &nf.c12)?;
            let empty = only_yt && near.len() == 2 && !mu.is_zero() && !res.is_zero();
            (empty, format!("restricted equations are a12 and y*c12 in (y,t); t^3 coefficient {mu}, resultant {res}"))
        } else {
            (false, "the restricted equations cut out a curve".to_string())
        };
        trace.loci.push(WallLocus {
            wall: i,
            near: describe(&near_zero, &near),
            far: describe(&far_zero, &far),
            near_empty: Some(near_empty),
            restricts_to_isomorphism: Some(near_empty),
            certificate,
        });
    }

    let target_ring = Ring::new(&target.names);
    let model: Vec<QPoly> = transported.iter().map(|f| f.set(&[("x", 1)]).embed(&target_ring)).collect::<Result<_, _>>()?;
    let two_equation_model = WciSpec::in_wps(target.clone(), model.clone(), &[6, 7])?;
    let wi = target_ring.idx("w");
    let f1w = model[0].coefficients_in(wi);
    if f1w.len() != 2 || f1w[1] != p(&target_ring, "-1") {
        return Err(LinksError::Shape("the degree-6 equation is not -w + (terms without w)".into()));
    }
    let elim = Substitution::with(&target_ring, &[("w", f1w[0].clone())]);
    let hat = substitute(&model[1], &elim)?;
    let hat = hat.embed(&hat_x_ambient().ring())?;
    let b2 = nf.b4.embed(&ring)?.set(&[]).embed(&Ring::new(&["y", "t"]))?;
    let hat_x = NormalFormHatX::decompose(&hat, Some(b2))?;
    if hat_x.lambda != nf.lambda {
        return Err(LinksError::Inconsistency("λ changed under transport".into()));
    }
    Ok(SigmaLink { center, kawamata, blowup, proper_transform, trace, contracted, image_point, two_equation_model, hat_x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::member::{random_member, MemberOptions};
    use crate::links::normal_form::normal_form_x1214;
    use crate::qpoly::{Rat, DEFAULT_PRIME};

    fn link(seed: u64, options: &MemberOptions) -> SigmaLink {
        let x = random_member(seed, DEFAULT_PRIME, options).unwrap();
        let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
        construct_link_sigma(&nf).unwrap()
    }

    #[test]
    fn sigma_on_random_member() {
        let s = link(11, &MemberOptions::default());
        assert_eq!(s.kawamata.discrepancy, Rat::new(1, 11));
        assert_eq!(s.center.quotient().unwrap().to_string(), "1/11(1,2,9)");
        assert_eq!(s.trace.small_wall_count(), 2);
        assert_eq!(s.trace.loci[0].restricts_to_isomorphism, Some(true));
        assert_eq!(s.trace.loci[1].restricts_to_isomorphism, Some(false));
        let f = &s.hat_x.equation;
        assert!(f.contains("v^2*u"));
        assert_eq!(f.coefficient_of("y*z^2*v*u"), s.hat_x.lambda);
        assert!(!s.hat_x.lambda.is_zero());
        let r = s.proper_transform.ring();
        for (i, g) in s.proper_transform.equations.iter().enumerate() {
            let back = g.set(&[("u", 1)]).embed(&x1214_ambient().ring()).unwrap();
            assert_eq!(back, link_nf(11).equations[i]);
            assert_eq!(g.ring().names(), r.names());
        }
    }

    fn link_nf(seed: u64) -> NormalFormX1214 {
        let x = random_member(seed, DEFAULT_PRIME, &MemberOptions::default()).unwrap();
        normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap()
    }

    #[test]
    fn lambda_zero_has_no_yzvu() {
        let s = link(12, &MemberOptions::lambda_zero());
        assert!(!s.hat_x.equation.contains("y*z^2*v*u"));
    }
}
