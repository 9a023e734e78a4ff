//! Exact row reduction over the coefficient field.

use super::coefficient::Coefficient;

/// Rank of a matrix with exact entries.
pub fn rank(matrix: &[Vec<Coefficient>]) -> usize {
    let mut m: Vec<Vec<Coefficient>> = matrix.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] * &inv;
                for j in c..cols {
                    let t = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let c = |v: i64| Coefficient::from_i64(v);
        assert_eq!(rank(&[vec![c(1), c(2)], vec![c(2), c(4)]]), 1);
        assert_eq!(rank(&[vec![c(1), c(2)], vec![c(0), c(4)]]), 2);
        assert_eq!(rank(&[vec![c(0), c(0)]]), 0);
    }
}
