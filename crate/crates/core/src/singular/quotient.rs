//! Cyclic quotient singularities 1/r(a,b,c).

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientSingularity {
    pub r: i64,
    pub weights: [i64; 3],
}

impl QuotientSingularity {
    /// Residues are reduced into `[0, r)`.
    pub fn new(r: i64, weights: [i64; 3]) -> Self {
        assert!(r >= 1, "group order must be positive");
        QuotientSingularity { r, weights: weights.map(|a| a.rem_euclid(r)) }
    }

    fn units(&self) -> impl Iterator<Item = i64> + '_ {
        (1..self.r.max(2)).filter(|u| u.gcd(&self.r) == 1)
    }

    fn scaled_sorted(&self, u: i64) -> [i64; 3] {
        let mut w = self.weights.map(|a| (a * u).rem_euclid(self.r));
        w.sort_unstable();
        w
    }

    /// Lexicographically smallest sorted residue triple over all unit multiples.
    pub fn canonical(&self) -> QuotientSingularity {
        if self.r == 1 {
            return QuotientSingularity { r: 1, weights: [0, 0, 0] };
        }
        let best = self.units().map(|u| self.scaled_sorted(u)).min().expect("a unit exists");
        QuotientSingularity { r: self.r, weights: best }
    }

    pub fn is_smooth(&self) -> bool {
        self.r == 1
    }

    /// Terminal iff some unit multiple is `(1, a, r-a)` with `gcd(a, r) = 1`.
    pub fn is_terminal(&self) -> bool {
        if self.r == 1 {
            return true;
        }
        self.units().any(|u| {
            let w = self.weights.map(|a| (a * u).rem_euclid(self.r));
            (0..3).any(|i| {
                let (b, c) = (w[(i + 1) % 3], w[(i + 2) % 3]);
                w[i] == 1 && b != 0 && c != 0 && (b + c) % self.r == 0 && b.gcd(&self.r) == 1
            })
        })
    }
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "1/{}({},{},{})", self.r, a, b, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let q = QuotientSingularity::new(11, [2, 4, 7]);
        assert_eq!(q.canonical().to_string(), "1/11(1,2,9)");
        assert_eq!(QuotientSingularity::new(11, [1, 2, 9]).canonical(), q.canonical());
        assert!(q.is_terminal());
        assert_eq!(QuotientSingularity::new(2, [1, 1, 1]).canonical().to_string(), "1/2(1,1,1)");
        assert_eq!(QuotientSingularity::new(3, [1, 1, 2]).canonical().to_string(), "1/3(1,1,2)");
        assert_eq!(QuotientSingularity::new(5, [3, 1, 2]).canonical().to_string(), "1/5(1,2,3)");
    }

    #[test]
    fn non_terminal() {
        assert!(!QuotientSingularity::new(3, [1, 1, 1]).is_terminal());
        assert!(QuotientSingularity::new(2, [1, 1, 1]).is_terminal());
    }
}
