//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use birat::qpoly::{substitute, Coefficient, QPoly, Rat, Ring, Substitution};
use rand::Rng;

/// Discrepancy of a weighted blowup read off the first affine chart:
/// `y1 = ξ^b1`, `yj = yj ξ^bj`, comparing the ξ-order of the chart Jacobian
/// with the ξ-orders of the pulled-back equations.
pub fn chart_discrepancy(eqs: &[QPoly], b: &[i64], r: i64) -> Rat {
    let src = eqs[0].ring().clone();
    let n = src.len();
    assert_eq!(b.len(), n);
    let mut names = vec!["xi".to_string()];
    names.extend(src.names()[1..].iter().cloned());
    let chart = Ring::new(&names);
    let xi = QPoly::var(&chart, "xi");
    let mut images = vec![xi.pow(b[0] as u32)];
    for j in 1..n {
        images.push(&QPoly::var(&chart, &src.names()[j]) * &xi.pow(b[j] as u32));
    }
    let jac: Vec<Vec<QPoly>> = images.iter().map(|f| (0..n).map(|k| f.derivative(k)).collect()).collect();
    let det = cofactor_det(&jac);
    let s = Substitution::from_images(&src, &chart, images).unwrap();
    let orders: i64 = eqs.iter().map(|f| xi_order(&substitute(f, &s).unwrap())).sum();
    Rat::new(xi_order(&det) + 1 - orders, r) - Rat::from_integer(1)
}

fn xi_order(f: &QPoly) -> i64 {
    assert!(!f.is_zero());
    f.terms().map(|(m, _)| m.exponents()[0] as i64).min().unwrap()
}

pub fn cofactor_det(m: &[Vec<QPoly>]) -> QPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut out = QPoly::zero(&ring);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<QPoly>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, e)| e.clone()).collect()).collect();
        let term = &m[0][c] * &cofactor_det(&minor);
        out = if c % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut e, mut base) = (1u128, p - 2, a as u128 % p as u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    r as u64
}

/// Sylvester determinant of dense coefficient vectors (highest degree first) mod p.
pub fn sylvester_det_mod_p(f: &[u64], g: &[u64], p: u64) -> u64 {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return 1;
    }
    let mut a = vec![vec![0u64; size]; size];
    for i in 0..n {
        for (k, c) in f.iter().enumerate() {
            a[i][i + k] = *c % p;
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().enumerate() {
            a[n + i][i + k] = *c % p;
        }
    }
    let mut det = 1u64;
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| a[r][col] != 0) else { return 0 };
        if piv != col {
            a.swap(piv, col);
            det = (p - det) % p;
        }
        det = (det as u128 * a[col][col] as u128 % p as u128) as u64;
        let inv = inv_mod(a[col][col], p);
        for r in col + 1..size {
            let factor = (a[r][col] as u128 * inv as u128 % p as u128) as u64;
            for k in col..size {
                let sub = (factor as u128 * a[col][k] as u128 % p as u128) as u64;
                a[r][k] = (a[r][k] + p - sub) % p;
            }
        }
    }
    det
}

/// Degree of gcd of two dense polynomials (lowest degree first) mod p.
pub fn gcd_degree_mod_p(f: &[u64], g: &[u64], p: u64) -> usize {
    let trim = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let c = (*a.last().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
            let shift = a.len() - b.len();
            for (k, bk) in b.iter().enumerate() {
                let sub = (c as u128 * *bk as u128 % p as u128) as u64;
                a[shift + k] = (a[shift + k] + p - sub) % p;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Random polynomial with small integer coefficients.
pub fn random_poly<R: Rng>(ring: &Arc<Ring>, rng: &mut R, terms: usize, max_exp: u32) -> QPoly {
    let mut out = QPoly::zero(ring);
    for _ in 0..terms {
        let mut m = QPoly::constant(ring, Coefficient::from_i64(rng.gen_range(-5..=5)));
        for name in ring.names() {
            m = &m * &QPoly::var(ring, name).pow(rng.gen_range(0..=max_exp));
        }
        out = &out + &m;
    }
    out
}
