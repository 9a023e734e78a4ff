//! Rank-2 toric varieties given by a 2×n weight matrix and an irrelevant-ideal split.

use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::wps::Wps;
use super::AmbientError;
use crate::qpoly::{Ring, WeightVector};

pub type Vec2 = (i64, i64);

pub fn cross(a: Vec2, b: Vec2) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

pub fn dot(a: Vec2, b: Vec2) -> i64 {
    a.0 * b.0 + a.1 * b.1
}

pub fn primitive(v: Vec2) -> Vec2 {
    let g = v.0.gcd(&v.1);
    if g == 0 {
        v
    } else {
        (v.0 / g, v.1 / g)
    }
}

/// Same ray: positive multiples of each other.
pub fn same_ray(a: Vec2, b: Vec2) -> bool {
    cross(a, b) == 0 && dot(a, b) > 0
}

/// A 2-dimensional cone (or half-line) in ℤ² with primitive rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeZ2 {
    pub rays: [Vec2; 2],
}

impl ConeZ2 {
    pub fn new(a: Vec2, b: Vec2) -> Self {
        let (a, b) = (primitive(a), primitive(b));
        if cross(a, b) < 0 {
            ConeZ2 { rays: [b, a] }
        } else {
            ConeZ2 { rays: [a, b] }
        }
    }

    pub fn contains(&self, v: Vec2) -> bool {
        let [a, b] = self.rays;
        if cross(a, b) == 0 {
            return same_ray(a, v) || v == (0, 0);
        }
        cross(a, v) >= 0 && cross(v, b) >= 0
    }

    pub fn in_interior(&self, v: Vec2) -> bool {
        let [a, b] = self.rays;
        cross(a, v) > 0 && cross(v, b) > 0
    }

    pub fn on_boundary(&self, v: Vec2) -> bool {
        v != (0, 0) && (same_ray(self.rays[0], v) || same_ray(self.rays[1], v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Toric {
    pub columns: Vec<Vec2>,
    pub names: Vec<String>,
    /// The irrelevant ideal is `(x_0..x_{split-1}) ∩ (x_split..x_{n-1})`.
    pub split: usize,
}

impl Rank2Toric {
    pub fn new<S: AsRef<str>>(columns: Vec<Vec2>, names: &[S], split: usize) -> Result<Self, AmbientError> {
        if columns.len() != names.len() {
            return Err(AmbientError::Invalid("column and name counts differ".into()));
        }
        if split < 2 || split + 1 >= columns.len() {
            return Err(AmbientError::Invalid(format!("split {split} out of range for {} columns", columns.len())));
        }
        if columns.iter().any(|c| *c == (0, 0)) {
            return Err(AmbientError::Degenerate("zero column".into()));
        }
        let t = Rank2Toric { columns, names: names.iter().map(|s| s.as_ref().to_string()).collect(), split };
        t.initial_chamber()?;
        Ok(t)
    }

    pub fn ring(&self) -> Arc<Ring> {
        Ring::new(&self.names)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn column(&self, name: &str) -> Vec2 {
        self.columns[self.index(name).expect("known variable")]
    }

    /// Row `k` of the matrix as a grading.
    pub fn row(&self, k: usize) -> WeightVector {
        WeightVector::integral(self.columns.iter().map(|c| if k == 0 { c.0 } else { c.1 }).collect())
    }

    /// Column indices sorted by angle inside the half-plane spanned by all
    /// columns. Fails if the columns do not span a strictly convex 2-dim cone.
    pub fn angular_order(&self) -> Result<Vec<usize>, AmbientError> {
        let n = self.columns.len();
        let first = (0..n)
            .find(|&i| {
                (0..n).all(|j| {
                    let c = cross(self.columns[i], self.columns[j]);
                    c > 0 || (c == 0 && dot(self.columns[i], self.columns[j]) > 0)
                })
            })
            .ok_or_else(|| AmbientError::Degenerate("columns do not lie in a strictly convex cone".into()))?;
        let mut order: Vec<usize> = (0..n).collect();
        let f = self.columns[first];
        order.sort_by(|&a, &b| {
            let (ca, cb) = (self.columns[a], self.columns[b]);
            match cross(ca, cb).cmp(&0) {
                Ordering::Greater => Ordering::Less,
                Ordering::Less => Ordering::Greater,
                Ordering::Equal => a.cmp(&b),
            }
        });
        debug_assert!(same_ray(self.columns[order[0]], f));
        if cross(self.columns[order[0]], self.columns[order[n - 1]]) <= 0 {
            return Err(AmbientError::Degenerate("all columns lie on one line".into()));
        }
        Ok(order)
    }

    /// Column indices grouped by ray, in angular order.
    pub fn ray_groups(&self) -> Result<Vec<(Vec2, Vec<usize>)>, AmbientError> {
        let mut groups: Vec<(Vec2, Vec<usize>)> = Vec::new();
        for i in self.angular_order()? {
            let c = self.columns[i];
            match groups.last_mut() {
                Some((r, members)) if same_ray(*r, c) => members.push(i),
                _ => groups.push((primitive(c), vec![i])),
            }
        }
        Ok(groups)
    }

    /// The GIT chamber of this model and whether the second column group lies
    /// clockwise of the first.
    pub fn initial_chamber(&self) -> Result<(ConeZ2, bool), AmbientError> {
        let groups = self.ray_groups()?;
        let pos = |i: usize| groups.iter().position(|(_, m)| m.contains(&i)).unwrap();
        let g1: Vec<usize> = (0..self.split).map(pos).collect();
        let g2: Vec<usize> = (self.split..self.columns.len()).map(pos).collect();
        let (max1, min1) = (*g1.iter().max().unwrap(), *g1.iter().min().unwrap());
        let (max2, min2) = (*g2.iter().max().unwrap(), *g2.iter().min().unwrap());
        if max1 < min2 {
            Ok((ConeZ2::new(groups[max1].0, groups[min2].0), false))
        } else if max2 < min1 {
            Ok((ConeZ2::new(groups[max2].0, groups[min1].0), true))
        } else {
            Err(AmbientError::Degenerate(
                "the two column groups interleave; the chamber is not full-dimensional".into(),
            ))
        }
    }
}

/// The weighted blowup of `p` at the coordinate point of `center` with weights
/// `b / r` on the other variables (in their order in `p`), where `r` is the
/// weight of `center`. Columns: `u: (0,-r)`, `center: (r,0)`, `x_i: (a_i, b_i)`.
pub fn blowup_ambient(p: &Wps, center: &str, b: &[i64], u: &str) -> Result<Rank2Toric, AmbientError> {
    let c = p.index(center).ok_or_else(|| AmbientError::Invalid(format!("unknown center {center}")))?;
    let r = p.weights[c];
    if r == 0 {
        return Err(AmbientError::Invalid("center weight zero".into()));
    }
    if b.len() != p.weights.len() - 1 {
        return Err(AmbientError::Invalid("one blowup weight per non-center variable".into()));
    }
    if b.iter().any(|x| *x <= 0) {
        return Err(AmbientError::Invalid("blowup weights must be positive".into()));
    }
    let mut columns = vec![(0, -r), (r, 0)];
    let mut names = vec![u.to_string(), center.to_string()];
    let mut k = 0;
    for (i, n) in p.names.iter().enumerate() {
        if i == c {
            continue;
        }
        columns.push((p.weights[i], b[k]));
        names.push(n.clone());
        k += 1;
    }
    Rank2Toric::new(columns, &names, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowup_matrix() {
        let p = Wps::new(&[1, 2, 3, 4, 7, 11], &["x", "y", "z", "t", "v", "w"]).unwrap();
        let t = blowup_ambient(&p, "w", &[6, 1, 7, 2, 9], "u").unwrap();
        assert_eq!(t.columns, vec![(0, -11), (11, 0), (1, 6), (2, 1), (3, 7), (4, 2), (7, 9)]);
        let groups = t.ray_groups().unwrap();
        assert_eq!(groups.len(), 6);
        assert_eq!(groups[2].1.len(), 2);
        let (chamber, reversed) = t.initial_chamber().unwrap();
        assert!(!reversed);
        assert_eq!(chamber, ConeZ2::new((1, 0), (2, 1)));
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(Rank2Toric::new(vec![(1, 0), (-1, 0), (0, 1), (1, 1)], &["a", "b", "c", "d"], 2).is_err());
        assert!(Rank2Toric::new(vec![(1, 0), (1, 1), (1, 0), (1, 1)], &["a", "b", "c", "d"], 2).is_err());
    }
}
