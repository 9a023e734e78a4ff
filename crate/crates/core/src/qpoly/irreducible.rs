//! Three-valued irreducibility verdicts with checkable certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::coefficient::{Coefficient, Field, DEFAULT_PRIME};
use super::fp_univariate as fp;
use super::gcd::gcd;
use super::poly::{Monomial, QPoly, Ring};
use super::substitution::{substitute, Substitution};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Irreducible { witness: String },
    Reducible { factors: (String, String) },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible { .. })
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, Verdict::Reducible { .. })
    }
}

/// Result carrying the factor polynomials themselves for reducible inputs.
#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub factors: Option<(QPoly, QPoly)>,
}

fn reducible(f: &QPoly, a: QPoly, b: QPoly) -> Decision {
    assert!(&a * &b == *f, "factor certificate does not multiply back");
    assert!(!a.is_constant() && !b.is_constant());
    Decision {
        verdict: Verdict::Reducible { factors: (a.to_string(), b.to_string()) },
        factors: Some((a, b)),
    }
}

fn irreducible(witness: String) -> Decision {
    Decision { verdict: Verdict::Irreducible { witness }, factors: None }
}

/// Decides irreducibility of `f` where a sound criterion applies.
///
/// Reducible verdicts always carry an exact factorization that is checked by
/// multiplication. `Unknown` is returned when no criterion fires.
pub fn irreducibility_verdict(f: &QPoly, trials: u32, seed: u64) -> Verdict {
    decide(f, trials, seed).verdict
}

pub fn decide(f: &QPoly, trials: u32, seed: u64) -> Decision {
    if f.is_zero() || f.is_constant() {
        return Decision { verdict: Verdict::Unknown { reason: "zero or unit".into() }, factors: None };
    }
    let ring = f.ring().clone();
    let n = ring.len();

    // a variable dividing every term
    for i in 0..n {
        if f.order_in(i) > 0 {
            let x = QPoly::monomial(&ring, Monomial::var(n, i), f.field().one());
            let q = f.exact_div(&x).expect("variable divides");
            if q.is_constant() {
                return irreducible(format!("linear monomial in {}", ring.names()[i]));
            }
            return reducible(f, x, q);
        }
    }

    // repeated factors
    for i in f.variables() {
        let g = gcd(f, &f.derivative(i));
        if !g.is_constant() && g.total_degree() < f.total_degree() {
            let q = f.exact_div(&g).expect("gcd divides");
            return reducible(f, g, q);
        }
    }

    // linear in some variable with coprime coefficients
    for i in f.variables() {
        if f.degree_in(i) == 1 {
            let c = f.coefficients_in(i);
            let g = gcd(&c[0], &c[1]);
            if g.is_constant() {
                return irreducible(format!("linear in {} with coprime coefficients", ring.names()[i]));
            }
            let q = f.exact_div(&g).expect("common content divides");
            return reducible(f, g, q);
        }
    }

    // binary forms: a linear factor from a root of the dehomogenization
    let vars = f.variables();
    if vars.len() == 2 {
        if let Some(d) = homogeneous_degree(f) {
            if let Some(lin) = linear_factor_of_binary_form(f, vars[0], vars[1], d, seed) {
                let q = f.exact_div(&lin).expect("root gives a factor");
                if q.is_constant() {
                    return irreducible("binary form of degree 1".into());
                }
                return reducible(f, lin, q);
            }
        }
    }

    // restriction to random lines over a prime field
    let p = f.field().prime().unwrap_or(DEFAULT_PRIME);
    let Some(total) = f.total_degree() else { unreachable!() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let line_ring = Ring::new(&["T"]);
    let fp_poly = f.clone().into_field(Field::Prime(p));
    for _ in 0..trials {
        let images: Vec<QPoly> = (0..n)
            .map(|_| {
                let a = Coefficient::modular(rng.gen_range(0..p), p);
                let b = Coefficient::modular(rng.gen_range(1..p), p);
                &QPoly::constant(&line_ring, a)
                    + &QPoly::monomial(&line_ring, Monomial(vec![1]), b)
            })
            .collect();
        let s = Substitution::from_images(&ring, &line_ring, images).expect("line substitution");
        let r = substitute(&fp_poly, &s).expect("same ring");
        let dense = to_dense(&r, p);
        if fp::degree(&dense) == Some(total as usize) && fp::is_irreducible(&dense, p) {
            return irreducible(format!(
                "restriction to a random line over F_{p} is irreducible of degree {total} (irreducible over F_{p})"
            ));
        }
    }
    Decision {
        verdict: Verdict::Unknown { reason: format!("no criterion applied after {trials} line restrictions") },
        factors: None,
    }
}

fn to_dense(r: &QPoly, p: u64) -> fp::Dense {
    let d = r.degree_in(0) as usize;
    let mut v = vec![0u64; d + 1];
    for (m, c) in r.terms() {
        v[m.0[0] as usize] = c.clone().into_field(Field::Prime(p)).residue().unwrap();
    }
    fp::trim(v)
}

fn homogeneous_degree(f: &QPoly) -> Option<u32> {
    let mut it = f.terms().map(|(m, _)| m.total_degree());
    let d = it.next()?;
    it.all(|e| e == d).then_some(d)
}

/// A factor `x - a*y` (or `y`) of a binary form in (`x`, `y`), if one exists
/// over the coefficient field and the root is found.
fn linear_factor_of_binary_form(f: &QPoly, x: usize, y: usize, d: u32, seed: u64) -> Option<QPoly> {
    let ring = f.ring().clone();
    let n = ring.len();
    let xv = QPoly::monomial(&ring, Monomial::var(n, x), f.field().one());
    let yv = QPoly::monomial(&ring, Monomial::var(n, y), f.field().one());
    if f.degree_in(x) < d {
        return Some(yv);
    }
    let coeffs: Vec<Coefficient> = (0..=d)
        .map(|k| {
            let mut e = vec![0u32; n];
            e[x] = k;
            e[y] = d - k;
            f.coefficient(&Monomial(e))
        })
        .collect();
    let root = match f.field() {
        Field::Prime(p) => {
            let dense: fp::Dense = coeffs.iter().map(|c| c.residue().unwrap()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            fp::roots(&dense, p, &mut rng).first().map(|&a| Coefficient::modular(a, p))
        }
        Field::Rational => rational_root(&coeffs).map(Coefficient::Rational),
    }?;
    Some(&xv - &yv.scale(&root))
}

/// A rational root of `Σ c_k t^k` via the rational root test, when the
/// extreme coefficients are small enough to enumerate divisors.
fn rational_root(coeffs: &[Coefficient]) -> Option<BigRational> {
    let rats: Vec<BigRational> = coeffs.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    if rats[0].is_zero() {
        return Some(BigRational::zero());
    }
    let lcm = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let a0 = ints[0].abs().to_u64()?;
    let an = ints.last().unwrap().abs().to_u64()?;
    if a0 > 1_000_000 || an > 1_000_000 {
        return None;
    }
    let divisors = |n: u64| (1..=n).filter(move |k| n % k == 0);
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(sign) * BigInt::from(num), BigInt::from(den));
                let val = rats.iter().rev().fold(BigRational::zero(), |acc, c| acc * &cand + c);
                if val.is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}
