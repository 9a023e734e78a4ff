//! Sylvester resultants with polynomial entries (fraction-free Bareiss).

use super::poly::QPoly;
use super::PolyError;

/// Determinant of a square matrix with polynomial entries.
pub fn determinant(matrix: Vec<Vec<QPoly>>) -> QPoly {
    let n = matrix.len();
    let ring = match matrix.first().and_then(|r| r.first()) {
        Some(p) => p.ring().clone(),
        None => panic!("empty matrix has no ring"),
    };
    let mut m = matrix;
    let mut sign_negative = false;
    let mut prev = QPoly::one(&ring);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_negative = !sign_negative;
                }
                None => return QPoly::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_negative {
        -d
    } else {
        d
    }
}

/// Resultant with prescribed formal degrees `m >= deg f`, `n >= deg g` in `var`.
pub fn resultant_formal(f: &QPoly, g: &QPoly, var: usize, m: usize, n: usize) -> QPoly {
    let ring = f.ring();
    if m + n == 0 {
        return QPoly::one(ring);
    }
    let zero = QPoly::zero(ring);
    let mut cf = f.coefficients_in(var);
    cf.resize(m + 1, zero.clone());
    let mut cg = g.coefficients_in(var);
    cg.resize(n + 1, zero.clone());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cf.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cg.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Sylvester resultant of `f` and `g` with respect to `var`.
pub fn resultant(f: &QPoly, g: &QPoly, var: usize) -> Result<QPoly, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.ring().names() != g.ring().names() {
        return Err(PolyError::AmbientMismatch);
    }
    Ok(resultant_formal(f, g, var, f.degree_in(var) as usize, g.degree_in(var) as usize))
}

/// Resultant of two binary forms of degrees `m`, `n` in the variables
/// (`s`, `t`): zero iff they share a common projective root.
pub fn binary_form_resultant(f: &QPoly, g: &QPoly, s: usize, t: usize, m: usize, n: usize) -> QPoly {
    let one = f.field().join(g.field()).one();
    let fs = f.partial_evaluate(&[(s, one.clone())]);
    let gs = g.partial_evaluate(&[(s, one)]);
    resultant_formal(&fs, &gs, t, m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{parse, Ring};

    #[test]
    fn monomial_and_shared_root() {
        let r = Ring::new(&["Y", "T"]);
        let f = parse("T^3", &r).unwrap();
        let g = parse("Y^3", &r).unwrap();
        assert_eq!(resultant(&f, &g, 1).unwrap(), parse("Y^9", &r).unwrap());
        let h = parse("T - Y", &r).unwrap();
        assert!(resultant(&h, &h, 1).unwrap().is_zero());
    }

    #[test]
    fn classical_value() {
        let r = Ring::new(&["x", "a", "b"]);
        // Res(x^2 + a x + b, 2x + a) = -(a^2 - 4b) up to the usual sign
        let f = parse("x^2 + a*x + b", &r).unwrap();
        let g = parse("2*x + a", &r).unwrap();
        let res = resultant(&f, &g, 0).unwrap();
        assert_eq!(res, parse("4*b - a^2", &r).unwrap());
    }
}
