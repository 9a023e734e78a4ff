//! Dense univariate polynomials over a prime field.
//!
//! Coefficient vectors are stored lowest degree first, with no trailing
//! zeros. The empty vector is the zero polynomial. The prime is assumed odd.

use rand::Rng;

use super::coefficient::{inv_mod, mul_mod, pow_mod};

pub type Dense = Vec<u64>;

pub fn trim(mut a: Dense) -> Dense {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Dense {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Dense {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Dense {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub fn monic(a: &[u64], p: u64) -> Dense {
    match a.last() {
        Some(&lc) => scale(a, inv_mod(lc, p), p),
        None => Vec::new(),
    }
}

/// Quotient and remainder. Panics on division by zero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Dense, Dense) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(c, bj, p)) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Dense {
    div_rem(a, b, p).1
}

/// Monic gcd (zero if both are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Dense {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &[u64], p: u64) -> Dense {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect())
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// `base^e mod m`.
pub fn pow_mod_poly(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Dense {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    acc
}

/// Squarefree factorization: pairs (factor, multiplicity), factors monic.
pub fn squarefree(a: &[u64], p: u64) -> Vec<(Dense, u32)> {
    let f = monic(a, p);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = derivative(&f, p);
    if d.is_empty() {
        // f(x) = g(x^p)
        let g: Dense = f.iter().step_by(p as usize).copied().collect();
        for (h, m) in squarefree(&g, p) {
            out.push((h, m * p as u32));
        }
        return out;
    }
    let mut c = gcd(&f, &d, p);
    let mut w = div_rem(&f, &c, p).0;
    let mut i = 1u32;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(&w, &c, p);
        let z = div_rem(&w, &y, p).0;
        if degree(&z).unwrap_or(0) > 0 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = div_rem(&c, &w, p).0;
    }
    if degree(&c).unwrap_or(0) > 0 {
        let g: Dense = c.iter().step_by(p as usize).copied().collect();
        for (h, m) in squarefree(&g, p) {
            out.push((h, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(a: &[u64], p: u64) -> Vec<(Dense, usize)> {
    let mut out = Vec::new();
    let mut f = monic(a, p);
    let x: Dense = vec![0, 1];
    let mut h = x.clone();
    let mut i = 0usize;
    while 2 * (i + 1) <= degree(&f).unwrap_or(0) {
        i += 1;
        h = pow_mod_poly(&h, p as u128, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if degree(&g).unwrap_or(0) > 0 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, i));
        }
    }
    if degree(&f).unwrap_or(0) > 0 {
        let d = degree(&f).unwrap();
        out.push((f, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree<R: Rng>(a: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Dense> {
    let f = monic(a, p);
    let n = degree(&f).unwrap_or(0);
    if n == d {
        return vec![f];
    }
    loop {
        let r: Dense = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        // r^((p^d - 1)/2) = (r * r^p * ... * r^(p^(d-1)))^((p-1)/2)
        let mut frob = r.clone();
        let mut norm = r.clone();
        for _ in 1..d {
            frob = pow_mod_poly(&frob, p as u128, &f, p);
            norm = rem(&mul(&norm, &frob, p), &f, p);
        }
        let t = pow_mod_poly(&norm, ((p - 1) / 2) as u128, &f, p);
        let g = gcd(&sub(&t, &[1], p), &f, p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_rem(&f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Full factorization into monic irreducibles with multiplicities.
pub fn factor<R: Rng>(a: &[u64], p: u64, rng: &mut R) -> Vec<(Dense, u32)> {
    let mut out = Vec::new();
    for (sf, m) in squarefree(a, p) {
        for (g, d) in distinct_degree(&sf, p) {
            for h in equal_degree(&g, d, p, rng) {
                out.push((h, m));
            }
        }
    }
    out.sort();
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(a: &[u64], p: u64) -> bool {
    let f = monic(a, p);
    let n = match degree(&f) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let x: Dense = vec![0, 1];
    let mut primes = Vec::new();
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    let frob = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = pow_mod_poly(&h, p as u128, &f, p);
        }
        h
    };
    for q in primes {
        let h = frob(n / q);
        if degree(&gcd(&sub(&h, &x, p), &f, p)).unwrap_or(0) > 0 {
            return false;
        }
    }
    rem(&sub(&frob(n), &x, p), &f, p).is_empty()
}

/// Distinct roots in `F_p`, sorted.
pub fn roots<R: Rng>(a: &[u64], p: u64, rng: &mut R) -> Vec<u64> {
    let f = trim(a.to_vec());
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let xp = pow_mod_poly(&[0, 1], p as u128, &f, p);
    let g = gcd(&sub(&xp, &[0, 1], p), &f, p);
    if degree(&g).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out: Vec<u64> = equal_degree(&g, 1, p, rng).into_iter().map(|h| (p - h[0]) % p).collect();
    out.sort_unstable();
    out
}

/// A square root of `a` modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// All `k`-th roots of `c` in `F_p`.
pub fn nth_roots<R: Rng>(c: u64, k: u32, p: u64, rng: &mut R) -> Vec<u64> {
    let mut f = vec![0u64; k as usize + 1];
    f[0] = (p - c % p) % p;
    f[k as usize] = 1;
    roots(&f, p, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_multiply_back() {
        let p = 101;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x-1)^2 (x-3) (x^2+2)
        let f = mul(&mul(&mul(&[100, 1], &[100, 1], p), &[98, 1], p), &[2, 0, 1], p);
        let fs = factor(&f, p, &mut rng);
        let mut prod = vec![1];
        for (g, m) in &fs {
            for _ in 0..*m {
                prod = mul(&prod, g, p);
            }
        }
        assert_eq!(prod, f);
        assert_eq!(roots(&f, p, &mut rng), vec![1, 3]);
        assert!(is_irreducible(&[2, 0, 1], p));
        assert!(!is_irreducible(&f, p));
    }

    #[test]
    fn square_roots() {
        let p = 2_147_483_647;
        for a in [4u64, 9, 123456, 5] {
            if let Some(r) = sqrt_mod(a, p) {
                assert_eq!(mul_mod(r, r, p), a);
            }
        }
        assert_eq!(sqrt_mod(4, 101).map(|r| mul_mod(r, r, 101)), Some(4));
    }
}
