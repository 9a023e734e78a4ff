//! Quasismoothness of weighted complete intersections: exact tests at
//! coordinate points and 2-variable strata, sampled Jacobian witnesses elsewhere.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SingularError;
use crate::ambient::WciSpec;
use crate::qpoly::fp_univariate as fp;
use crate::qpoly::gcd::gcd;
use crate::qpoly::linalg::rank;
use crate::qpoly::resultant::resultant;
use crate::qpoly::{jacobian, Coefficient, Field, Monomial, QPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Location {
    Point { variable: String },
    Stratum { variables: Vec<String> },
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QsmVerdict {
    pub location: String,
    pub method: Method,
    pub on_variety: bool,
    pub quasismooth: bool,
    /// Number of sampled cone points (0 for exact checks).
    pub samples: usize,
    pub witnesses: Vec<String>,
}

/// Exact data at a coordinate point `p_ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub variable: String,
    pub on_variety: bool,
    /// Equations containing a pure power of ξ.
    pub pure_powers: Vec<String>,
    pub jacobian_rank: usize,
    pub codimension: usize,
    /// Monomials `ξ^k·x_i` contributing to the Jacobian at the point.
    pub linear_terms: Vec<Vec<String>>,
}

impl PointCheck {
    pub fn quasismooth(&self) -> bool {
        !self.on_variety || self.jacobian_rank == self.codimension
    }
}

/// Coefficient matrix `M[j][i]` of `ξ^k·x_i` in `f_j` (column ξ is zero on V).
pub(crate) fn point_matrix(eqs: &[QPoly], xi: usize) -> (Vec<Vec<Coefficient>>, Vec<Vec<String>>) {
    let mut m = Vec::new();
    let mut names = Vec::new();
    for f in eqs {
        let n = f.ring().len();
        let mut row = vec![f.field().zero(); n];
        let mut found = Vec::new();
        for (mono, c) in f.terms() {
            let e = mono.exponents();
            let others: Vec<usize> = (0..n).filter(|&i| i != xi && e[i] > 0).collect();
            if others.len() == 1 && e[others[0]] == 1 {
                row[others[0]] = c.clone();
                found.push(QPoly::monomial(f.ring(), mono.clone(), f.field().one()).to_string());
            }
        }
        m.push(row);
        names.push(found);
    }
    (m, names)
}

fn is_pure_power(m: &Monomial, xi: usize) -> bool {
    m.exponents().iter().enumerate().all(|(i, &e)| (i == xi) == (e > 0))
}

pub fn check_coordinate_point(eqs: &[QPoly], variable: &str) -> Result<PointCheck, SingularError> {
    let ring = eqs.first().ok_or_else(|| SingularError::Invalid("no equations".into()))?.ring().clone();
    let xi = ring.index(variable).ok_or_else(|| SingularError::Invalid(format!("unknown variable {variable}")))?;
    let pure_powers: Vec<String> = eqs
        .iter()
        .flat_map(|f| f.terms().filter(|(m, _)| is_pure_power(m, xi)).map(|(m, _)| {
            QPoly::monomial(&ring, m.clone(), f.field().one()).to_string()
        }))
        .collect();
    let (m, linear_terms) = point_matrix(eqs, xi);
    Ok(PointCheck {
        variable: variable.to_string(),
        on_variety: pure_powers.is_empty(),
        pure_powers,
        jacobian_rank: rank(&m),
        codimension: eqs.len(),
        linear_terms,
    })
}

/// Dense coefficients of `f` in the single variable `var` over `F_p`.
pub(crate) fn to_dense(f: &QPoly, var: usize, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        debug_assert!(e.iter().enumerate().all(|(i, &k)| i == var || k == 0));
        let d = e[var] as usize;
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        let r = c.clone().into_field(Field::Prime(p)).residue().expect("prime field");
        out[d] = (out[d] + r) % p;
    }
    fp::trim(out)
}

fn residues(point: &[u64], p: u64) -> Vec<Coefficient> {
    point.iter().map(|&v| Coefficient::modular(v, p)).collect()
}

/// Rank of the Jacobian of `eqs` at a point of the affine cone over `F_p`.
pub fn jacobian_rank_at(eqs: &[QPoly], point: &[u64], p: u64) -> usize {
    let pt = residues(point, p);
    let m: Vec<Vec<Coefficient>> = jacobian(eqs)
        .iter()
        .map(|row| row.iter().map(|d| d.evaluate(&pt).expect("point length")).collect())
        .collect();
    rank(&m)
}

fn in_field(f: &QPoly, p: u64) -> QPoly {
    f.clone().into_field(Field::Prime(p))
}

/// Points of the affine cone `{eqs = 0}` over `F_p` whose coordinates are
/// nonzero exactly on `free`. At most two equations.
pub fn sample_cone_points(
    eqs: &[QPoly],
    free: &[usize],
    count: usize,
    seed: u64,
    p: u64,
) -> Result<Vec<Vec<u64>>, SingularError> {
    let ring = eqs.first().ok_or_else(|| SingularError::Invalid("no equations".into()))?.ring().clone();
    let n = ring.len();
    if eqs.len() > 2 || eqs.len() >= free.len() {
        return Err(SingularError::Invalid(format!(
            "sampler handles up to two equations on at least {} free variables",
            eqs.len() + 1
        )));
    }
    let eqs: Vec<QPoly> = eqs.iter().map(|f| in_field(f, p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 40 * count + 40 {
        attempts += 1;
        let mut unknowns: Vec<usize> = free.to_vec();
        unknowns.shuffle(&mut rng);
        unknowns.truncate(eqs.len());
        let mut point = vec![0u64; n];
        let mut fixed = Vec::new();
        for &i in free {
            if !unknowns.contains(&i) {
                point[i] = rng.gen_range(1..p);
                fixed.push((i, Coefficient::modular(point[i], p)));
            }
        }
        for i in 0..n {
            if !free.contains(&i) {
                fixed.push((i, Coefficient::modular(0, p)));
            }
        }
        let restricted: Vec<QPoly> = eqs.iter().map(|f| f.partial_evaluate(&fixed)).collect();
        let solutions: Vec<Vec<(usize, u64)>> = match unknowns.as_slice() {
            [e] => {
                let d = to_dense(&restricted[0], *e, p);
                if d.is_empty() {
                    vec![vec![(*e, rng.gen_range(1..p))]]
                } else {
                    fp::roots(&d, p, &mut rng).into_iter().map(|r| vec![(*e, r)]).collect()
                }
            }
            [a, b] => {
                let (f, g) = (&restricted[0], &restricted[1]);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let res = to_dense(&resultant(f, g, *b)?, *a, p);
                if res.is_empty() {
                    continue;
                }
                let mut sols = Vec::new();
                for ra in fp::roots(&res, p, &mut rng) {
                    let at = [(*a, Coefficient::modular(ra, p))];
                    let fa = to_dense(&f.partial_evaluate(&at), *b, p);
                    let ga = to_dense(&g.partial_evaluate(&at), *b, p);
                    let h = fp::gcd(&fa, &ga, p);
                    for rb in fp::roots(&h, p, &mut rng) {
                        sols.push(vec![(*a, ra), (*b, rb)]);
                    }
                }
                sols
            }
            _ => vec![vec![]],
        };
        let Some(sol) = solutions.into_iter().find(|s| s.iter().all(|(_, v)| *v != 0)) else { continue };
        for (i, v) in sol {
            point[i] = v;
        }
        let pt = residues(&point, p);
        debug_assert!(eqs.iter().all(|f| f.evaluate(&pt).unwrap().is_zero()));
        if eqs.iter().all(|f| f.evaluate(&pt).map(|c| c.is_zero()).unwrap_or(false)) {
            out.push(point);
        }
    }
    Ok(out)
}

/// Exact emptiness of the locus on a 2-variable stratum: the restricted
/// equations are binary forms, and a point with both coordinates nonzero is a
/// common root of the forms with their monomial factors removed.
pub fn two_variable_stratum_is_empty(eqs: &[QPoly], a: usize, b: usize) -> bool {
    let ring = eqs[0].ring().clone();
    let zeros: Vec<(usize, Coefficient)> =
        (0..ring.len()).filter(|&i| i != a && i != b).map(|i| (i, eqs[0].field().zero())).collect();
    let mut g: Option<QPoly> = None;
    for f in eqs {
        let mut r = f.partial_evaluate(&zeros);
        if r.is_zero() {
            continue;
        }
        for v in [a, b] {
            let k = r.order_in(v);
            if k > 0 {
                let mut e = vec![0u32; ring.len()];
                e[v] = k;
                r = r.exact_div(&QPoly::monomial(&ring, Monomial(e), r.field().one())).expect("monomial factor");
            }
        }
        g = Some(match g {
            None => r,
            Some(h) => gcd(&h, &r),
        });
    }
    match g {
        None => false,
        Some(h) => h.is_constant(),
    }
}

fn sampled_verdict(eqs: &[QPoly], free: &[usize], count: usize, seed: u64, p: u64, label: String) -> Result<QsmVerdict, SingularError> {
    let points = sample_cone_points(eqs, free, count, seed, p)?;
    let bad: Vec<String> = points
        .iter()
        .filter(|pt| jacobian_rank_at(eqs, pt, p) < eqs.len())
        .map(|pt| format!("{pt:?}"))
        .collect();
    Ok(QsmVerdict {
        location: label,
        method: Method::Sampled,
        on_variety: !points.is_empty(),
        quasismooth: bad.is_empty(),
        samples: points.len(),
        witnesses: if bad.is_empty() {
            vec![format!("Jacobian of full rank at {} points over F_{p}", points.len())]
        } else {
            bad
        },
    })
}

/// Quasismoothness of `v` at a location.
pub fn quasismooth_check(v: &WciSpec, location: &Location, p: u64) -> Result<QsmVerdict, SingularError> {
    let ring = v.ring();
    match location {
        Location::Point { variable } => {
            let c = check_coordinate_point(&v.equations, variable)?;
            if !c.on_variety {
                return Err(SingularError::NotOnVariety(format!("p_{variable}")));
            }
            Ok(QsmVerdict {
                location: format!("p_{variable}"),
                method: Method::Exact,
                on_variety: true,
                quasismooth: c.quasismooth(),
                samples: 0,
                witnesses: c.linear_terms.iter().flatten().cloned().collect(),
            })
        }
        Location::Stratum { variables } => {
            let idx: Vec<usize> = variables
                .iter()
                .map(|n| ring.index(n).ok_or_else(|| SingularError::Invalid(format!("unknown variable {n}"))))
                .collect::<Result<_, _>>()?;
            let label = format!("stratum({})", variables.join(","));
            if idx.len() == 2 && two_variable_stratum_is_empty(&v.equations, idx[0], idx[1]) {
                return Ok(QsmVerdict {
                    location: label,
                    method: Method::Exact,
                    on_variety: false,
                    quasismooth: true,
                    samples: 0,
                    witnesses: vec!["restricted forms have no common root".into()],
                });
            }
            sampled_verdict(&v.equations, &idx, 64, 0, p, label)
        }
        Location::Sampled { count, seed } => {
            let all: Vec<usize> = (0..ring.len()).collect();
            sampled_verdict(&v.equations, &all, *count, *seed, p, "general points".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Wps;
    use crate::qpoly::{parse, DEFAULT_PRIME};

    #[test]
    fn fermat_is_quasismooth() {
        let p = Wps::new(&[1, 1, 1, 1], &["a", "b", "c", "d"]).unwrap();
        let r = p.ring();
        let f = parse("a^3 + b^3 + c^3 + d^3", &r).unwrap();
        let v = WciSpec::in_wps(p, vec![f], &[3]).unwrap();
        for n in ["a", "b", "c", "d"] {
            assert!(matches!(quasismooth_check(&v, &Location::Point { variable: n.into() }, DEFAULT_PRIME),
                Err(SingularError::NotOnVariety(_))));
        }
        let s = quasismooth_check(&v, &Location::Sampled { count: 10, seed: 3 }, DEFAULT_PRIME).unwrap();
        assert!(s.quasismooth && s.samples == 10);
    }

    #[test]
    fn cone_singularity_is_detected() {
        let p = Wps::new(&[1, 1, 1, 1], &["a", "b", "c", "d"]).unwrap();
        let r = p.ring();
        let f = parse("a*b - c^2", &r).unwrap();
        let v = WciSpec::in_wps(p, vec![f], &[2]).unwrap();
        let c = quasismooth_check(&v, &Location::Point { variable: "d".into() }, DEFAULT_PRIME).unwrap();
        assert!(!c.quasismooth);
    }

    #[test]
    fn two_equation_sampler() {
        let r = crate::qpoly::Ring::new(&["a", "b", "c", "d"]);
        let f = parse("a*b - c^2", &r).unwrap();
        let g = parse("a^2 + b^2 + c^2 + d^2", &r).unwrap();
        let pts = sample_cone_points(&[f.clone(), g.clone()], &[0, 1, 2, 3], 5, 1, 101).unwrap();
        assert_eq!(pts.len(), 5);
        for pt in pts {
            let c: Vec<Coefficient> = pt.iter().map(|&x| Coefficient::modular(x, 101)).collect();
            assert!(f.evaluate(&c).unwrap().is_zero() && g.evaluate(&c).unwrap().is_zero());
        }
    }
}
