//! Multivariate gcd over a field by recursive primitive remainder sequences.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coefficient::{Coefficient, DEFAULT_PRIME};
use super::fp_univariate as fp;
use super::poly::{Monomial, QPoly};

/// Pseudo-remainder of `a` by `b` with respect to `var`.
pub fn pseudo_remainder(a: &QPoly, b: &QPoly, var: usize) -> QPoly {
    let db = b.degree_in(var);
    let cb = b.coefficients_in(var);
    let lc = cb[db as usize].clone();
    let n = a.ring().len();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let k = r.degree_in(var);
        let lr = r.coefficients_in(var)[k as usize].clone();
        let mut shift = Monomial::one(n);
        shift.0[var] = k - db;
        let one = r.field().one();
        r = &(&lc * &r) - &(&lr * &b.mul_monomial(&shift, &one));
    }
    r
}

/// gcd of the coefficients of `f` viewed as a polynomial in `var`.
pub fn content_in(f: &QPoly, var: usize) -> QPoly {
    let mut g = QPoly::zero(f.ring()).into_field(f.field());
    for c in f.coefficients_in(var) {
        g = gcd(&g, &c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

pub fn primitive_part(f: &QPoly, var: usize) -> QPoly {
    let c = content_in(f, var);
    if c.is_zero() {
        return f.clone();
    }
    f.exact_div(&c).expect("content divides")
}

/// Greatest common divisor, normalized to have lex-leading coefficient one.
/// `gcd(0, 0) = 0`.
pub fn gcd(f: &QPoly, g: &QPoly) -> QPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return QPoly::one(f.ring()).into_field(f.field().join(g.field()));
    }
    if coprime_on_a_line(f, g) {
        return QPoly::one(f.ring()).into_field(f.field().join(g.field()));
    }
    let var = match (0..f.ring().len()).rev().find(|&i| f.involves(i) || g.involves(i)) {
        Some(v) => v,
        None => return QPoly::one(f.ring()),
    };
    if !f.involves(var) {
        return gcd(f, &content_in(g, var));
    }
    if !g.involves(var) {
        return gcd(&content_in(f, var), g);
    }
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let c = gcd(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides");
    let mut b = g.exact_div(&cg).expect("content divides");
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            b = QPoly::one(f.ring()).into_field(b.field());
            break;
        }
        a = b;
        b = primitive_part(&r, var).monic();
    }
    (&c * &primitive_part(&b, var)).monic()
}

fn residue(c: &Coefficient, p: u64) -> Option<u64> {
    match c {
        Coefficient::Rational(r) => {
            let m = num_bigint::BigInt::from(p);
            if (r.denom() % &m).is_zero() {
                return None;
            }
            c.clone().into_field(super::Field::Prime(p)).residue()
        }
        Coefficient::Modular { value, .. } => Some(*value),
    }
}

/// Image of `f` on the line `t -> a + b*t` over F_p.
fn on_line(f: &QPoly, a: &[u64], b: &[u64], p: u64) -> Option<fp::Dense> {
    let mut out = vec![0u64];
    for (m, c) in f.terms() {
        let mut term = vec![residue(c, p)?];
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                term = fp::mul(&term, &[a[i], b[i]], p);
            }
        }
        out = fp::add(&out, &term, p);
    }
    Some(fp::trim(out))
}

/// True when `f` and `g` provably share no factor: on a random line `f` keeps
/// its total degree and the two restrictions are coprime.
fn coprime_on_a_line(f: &QPoly, g: &QPoly) -> bool {
    let p = f.field().join(g.field()).prime().unwrap_or(DEFAULT_PRIME);
    let n = f.ring().len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6763_64);
    for _ in 0..2 {
        let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let b: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
        let (Some(fl), Some(gl)) = (on_line(f, &a, &b, p), on_line(g, &a, &b, p)) else {
            return false;
        };
        if fp::degree(&fl).map(|d| d as u32) != f.total_degree() {
            continue;
        }
        if fp::degree(&fp::gcd(&fl, &gl, p)) == Some(0) {
            return true;
        }
    }
    false
}
