//! The second link from the degree-7 target and the induced involution of X(12,14).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::curves::dense_mod_p;
use super::normal_form::NormalFormX1214;
use super::sigma::NormalFormHatX;
use super::LinksError;
use crate::ambient::WciSpec;
use crate::qpoly::fp_univariate::roots;
use crate::qpoly::{parse, substitute, Coefficient, Field, QPoly, Rat, Ring, Substitution, WeightVector};

/// Coordinatewise `numerator / denominator`, all in the source ring.
#[derive(Clone, Debug, Serialize)]
pub struct RationalMap {
    pub label: String,
    #[serde(skip)]
    pub source: Arc<Ring>,
    #[serde(serialize_with = "crate::report::ser_displays")]
    pub numerators: Vec<QPoly>,
    #[serde(serialize_with = "crate::report::ser_displays")]
    pub denominators: Vec<QPoly>,
}

fn residue(c: Coefficient, p: u64) -> u64 {
    c.into_field(Field::Prime(p)).residue().expect("prime field")
}

fn eval_mod(f: &QPoly, point: &[Coefficient], p: u64) -> Result<u64, LinksError> {
    Ok(residue(f.evaluate(point)?, p))
}

fn lift(point: &[u64], p: u64) -> Vec<Coefficient> {
    point.iter().map(|&a| Coefficient::modular(a, p)).collect()
}

impl RationalMap {
    pub fn polynomial(label: &str, source: &Arc<Ring>, images: Vec<QPoly>) -> Self {
        let one = QPoly::one(source);
        RationalMap { label: label.into(), source: source.clone(), denominators: vec![one; images.len()], numerators: images }
    }

    pub fn identity(source: &Arc<Ring>) -> Self {
        let images = source.names().iter().map(|n| QPoly::var(source, n)).collect();
        Self::polynomial("identity", source, images)
    }

    pub fn apply(&self, point: &[u64], p: u64) -> Result<Vec<u64>, LinksError> {
        let pt = lift(point, p);
        let mut out = Vec::with_capacity(self.numerators.len());
        for (n, d) in self.numerators.iter().zip(&self.denominators) {
            let dv = eval_mod(d, &pt, p)?;
            if dv == 0 {
                return Err(LinksError::Sampling(format!("{} has a vanishing denominator {d}", self.label)));
            }
            let nv = Coefficient::modular(eval_mod(n, &pt, p)?, p);
            out.push(residue(&nv * &Coefficient::modular(dv, p).inv(), p));
        }
        Ok(out)
    }
}

/// Whether `a = c·b` in weighted projective space for some nonzero `c`.
pub fn same_point(a: &[u64], b: &[u64], weights: &[i64], p: u64) -> bool {
    if a == b {
        return true;
    }
    if a.iter().zip(b).any(|(x, y)| (*x == 0) != (*y == 0)) {
        return false;
    }
    let Some(k) = (0..a.len()).find(|&i| weights[i] == 1 && a[i] != 0) else {
        return false;
    };
    let c = Coefficient::modular(a[k], p) * Coefficient::modular(b[k], p).inv();
    (0..a.len()).all(|i| {
        let s = residue(&c.pow(weights[i] as u64) * &Coefficient::modular(b[i], p), p);
        s == a[i]
    })
}

fn nonzero(rng: &mut ChaCha8Rng, p: u64) -> u64 {
    rng.gen_range(1..p)
}

/// A random point of `v` over `F_p`: free coordinates drawn nonzero, the rest solved.
pub fn sample_point(v: &WciSpec, p: u64, seed: u64) -> Result<Vec<u64>, LinksError> {
    let wps = v.wps().ok_or_else(|| LinksError::Shape("sampling needs a weighted projective ambient".into()))?;
    let ring = v.ring();
    let n = ring.len();
    let by_weight = |skip: Option<usize>| (0..n).filter(|&i| Some(i) != skip).max_by_key(|&i| (wps.weights[i], i));
    let (linear, last) = match v.equations.len() {
        1 => (None, by_weight(None).expect("variables")),
        2 => {
            let lin = (0..n)
                .filter(|&i| v.equations[0].degree_in(i) == 1)
                .max_by_key(|&i| (wps.weights[i], i))
                .ok_or_else(|| LinksError::Shape("first equation is not linear in any variable".into()))?;
            let last = by_weight(Some(lin)).expect("variables");
            if v.equations[0].coefficients_in(lin)[1].involves(last) {
                return Err(LinksError::Shape("the linear coefficient involves the last variable".into()));
            }
            (Some(lin), last)
        }
        _ => return Err(LinksError::Shape("sampling supports one or two equations".into())),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let free: Vec<(usize, Coefficient)> = (0..n)
            .filter(|&i| i != last && Some(i) != linear)
            .map(|i| (i, Coefficient::modular(nonzero(&mut rng, p), p)))
            .collect();
        let eqs: Vec<QPoly> = v.equations.iter().map(|f| f.partial_evaluate(&free)).collect();
        let (target, solved) = match linear {
            None => (eqs[0].clone(), None),
            Some(w) => {
                let c = eqs[0].coefficients_in(w);
                if c.len() != 2 || c[1].is_zero() {
                    continue;
                }
                let image = (-&c[0]).scale(&c[1].constant_term().inv());
                let s = Substitution::with(&ring, &[(ring.names()[w].as_str(), image.clone())]);
                (substitute(&eqs[1], &s)?, Some((w, image)))
            }
        };
        if target.is_zero() {
            continue;
        }
        let rs = roots(&dense_mod_p(&target, last, p)?, p, &mut rng);
        if rs.is_empty() {
            continue;
        }
        let r = rs[rng.gen_range(0..rs.len())];
        let mut point = vec![0u64; n];
        for (i, c) in &free {
            point[*i] = residue(c.clone(), p);
        }
        point[last] = r;
        if let Some((w, image)) = solved {
            point[w] = eval_mod(&image, &lift(&point, p), p)?;
        }
        let pt = lift(&point, p);
        for f in &v.equations {
            if eval_mod(f, &pt, p)? != 0 {
                return Err(LinksError::Inconsistency("sampled point is off the variety".into()));
            }
        }
        return Ok(point);
    }
    Err(LinksError::Sampling("retry budget exhausted".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionWitness {
    pub samples: usize,
    pub skipped: usize,
    pub image_on_variety: usize,
    pub returns_to_start: usize,
    pub holds: bool,
}

pub fn verify_involution(v: &WciSpec, map: &RationalMap, samples: usize, seed: u64, p: u64) -> Result<InvolutionWitness, LinksError> {
    let weights = v.wps().ok_or_else(|| LinksError::Shape("needs a weighted projective ambient".into()))?.weights.clone();
    let (mut done, mut skipped, mut on, mut back) = (0, 0, 0, 0);
    let mut k = 0u64;
    while done < samples {
        if skipped > 4 * samples + 16 {
            return Err(LinksError::Sampling("denominators vanish too often".into()));
        }
        let point = sample_point(v, p, seed.wrapping_mul(1_000_003).wrapping_add(k))?;
        k += 1;
        let image = match map.apply(&point, p) {
            Ok(i) => i,
            Err(LinksError::Sampling(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        done += 1;
        let pt = lift(&image, p);
        if v.equations.iter().map(|f| eval_mod(f, &pt, p)).collect::<Result<Vec<_>, _>>()?.iter().all(|&r| r == 0) {
            on += 1;
        }
        if let Ok(twice) = map.apply(&image, p) {
            if same_point(&twice, &point, &weights, p) {
                back += 1;
            }
        }
    }
    Ok(InvolutionWitness { samples, skipped, image_on_variety: on, returns_to_start: back, holds: on == samples && back == samples })
}

/// `v -> -v - λyz²/x` with the matching correction of `w`.
pub fn involution_on_x(nf: &NormalFormX1214, lambda: &Coefficient) -> Result<RationalMap, LinksError> {
    let r = nf.ring.clone();
    let l = |s: &str| -> Result<QPoly, LinksError> { Ok(parse(s, &r)?) };
    let x2 = l("x^2")?;
    let v_num = &(-&l("v*x")?) - &l("y*z^2")?.scale(lambda);
    let w_num = &(&l("w*x^2")? - &l("x*y*z*v")?.scale(&(lambda + lambda))) - &l("y^2*z^3")?.scale(&(lambda * lambda));
    let mut num: Vec<QPoly> = r.names().iter().map(|n| QPoly::var(&r, n)).collect();
    let mut den = vec![QPoly::one(&r); r.len()];
    num[r.idx("v")] = v_num;
    den[r.idx("v")] = l("x")?;
    num[r.idx("w")] = w_num;
    den[r.idx("w")] = x2;
    Ok(RationalMap { label: "involution of X".into(), source: r, numerators: num, denominators: den })
}

/// The same map with `w` left unchanged.
pub fn involution_keeping_w(nf: &NormalFormX1214) -> Result<RationalMap, LinksError> {
    let mut m = involution_on_x(nf, &nf.lambda)?;
    let r = m.source.clone();
    m.label = "involution keeping w".into();
    m.numerators[r.idx("w")] = QPoly::var(&r, "w");
    m.denominators[r.idx("w")] = QPoly::one(&r);
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct ValuationWitness {
    /// Weights of `(u, y, t, v)` for the exceptional divisor over the cE6 point.
    pub weights: [i64; 4],
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub of_v: Rat,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub of_image_of_v: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct Involutions {
    #[serde(skip)]
    pub chi_hat: Substitution,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub chi_hat_v: QPoly,
    pub chi_hat_preserves: bool,
    pub chi_hat_is_involution: bool,
    /// X -> target, `(x³ : xy : z : x²t : x²v)`.
    pub sigma: RationalMap,
    pub sigma_prime: RationalMap,
    pub involution_on_x: RationalMap,
    pub valuation: ValuationWitness,
}

pub fn build_involutions(nf: &NormalFormX1214, hx: &NormalFormHatX) -> Result<Involutions, LinksError> {
    let hr = hx.ring.clone();
    let chi_v = &(-&QPoly::var(&hr, "v")) - &parse("y*z^2", &hr)?.scale(&hx.lambda);
    let chi_hat = Substitution::with(&hr, &[("v", chi_v.clone())]);
    let chi_hat_preserves = substitute(&hx.equation, &chi_hat)? == hx.equation;
    let chi_hat_is_involution = substitute(&chi_v, &chi_hat)? == QPoly::var(&hr, "v");

    let r = nf.ring.clone();
    let images: Vec<QPoly> = ["x^3", "x*y", "z", "x^2*t", "x^2*v"].iter().map(|s| parse(s, &r)).collect::<Result<_, _>>()?;
    let sigma = RationalMap::polynomial("link to the target", &r, images.clone());
    let mut prime = images;
    prime[4] = &(-&prime[4]) - &(&prime[1] * &prime[2].pow(2)).scale(&hx.lambda);
    let sigma_prime = RationalMap::polynomial("second link to the target", &r, prime);

    let e = WeightVector::integral(hr.names().iter().map(|n| match n.as_str() {
        "u" => 3,
        "y" => 1,
        "t" => 2,
        "v" => 2,
        _ => 0,
    }).collect());
    let at = |f: &QPoly| f.set(&[("z", 1)]).w_order(&e).expect("nonzero");
    let valuation = ValuationWitness { weights: [3, 1, 2, 2], of_v: at(&QPoly::var(&hr, "v")), of_image_of_v: at(&chi_v) };
    Ok(Involutions {
        chi_hat,
        chi_hat_v: chi_v,
        chi_hat_preserves,
        chi_hat_is_involution,
        sigma,
        sigma_prime,
        involution_on_x: involution_on_x(nf, &nf.lambda)?,
        valuation,
    })
}
