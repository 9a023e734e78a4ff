//! The 2-ray game on a rank-2 toric variety.

use serde::Serialize;

use super::toric::{cross, ConeZ2, Rank2Toric, Vec2};
use super::wps::Wps;
use super::AmbientError;
use crate::qpoly::poly::gcd_all;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallKind {
    Small,
    Divisorial {
        contracted: String,
        /// Dimension of the image of the contracted divisor.
        center_dim: usize,
        /// Variables spanning the center in the target.
        center_vars: Vec<String>,
        target: Wps,
        /// Exponent `k` with `ξ ↦ ξ·x^k` for each remaining variable, when integral.
        map_exponents: Option<Vec<(String, i64)>>,
    },
    Fibration {
        base_dim: usize,
        base_vars: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub ray: Vec2,
    pub variables: Vec<String>,
    /// Variables strictly beyond the wall in the walking direction.
    pub beyond: Vec<String>,
    /// Variables strictly before the wall.
    pub before: Vec<String>,
    pub kind: WallKind,
}

impl Wall {
    pub fn is_small(&self) -> bool {
        matches!(self.kind, WallKind::Small)
    }
}

/// Behaviour of a wall crossing after restricting to a subvariety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallLocus {
    pub wall: usize,
    /// Equations of the locus contracted on the near side.
    pub near: Vec<String>,
    /// Equations of the locus extracted on the far side.
    pub far: Vec<String>,
    pub near_empty: Option<bool>,
    pub restricts_to_isomorphism: Option<bool>,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkTrace {
    pub models: Vec<Rank2Toric>,
    pub chambers: Vec<ConeZ2>,
    /// The contraction at the near boundary of the starting chamber.
    pub initial: Wall,
    /// Crossings in walking order; all but the last are small.
    pub walls: Vec<Wall>,
    pub loci: Vec<WallLocus>,
}

impl LinkTrace {
    pub fn small_wall_count(&self) -> usize {
        self.walls.iter().filter(|w| w.is_small()).count()
    }

    pub fn final_wall(&self) -> &Wall {
        self.walls.last().expect("trace has a final wall")
    }
}

fn names_of(t: &Rank2Toric, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| t.names[i].clone()).collect()
}

fn classify(t: &Rank2Toric, ray: Vec2, on_ray: &[usize], beyond: &[usize], before: &[usize]) -> Wall {
    let kind = match beyond.len() {
        0 => WallKind::Fibration { base_dim: on_ray.len() - 1, base_vars: names_of(t, on_ray) },
        1 => {
            let c = beyond[0];
            let col = t.columns[c];
            let g = gcd_all([col.0, col.1]).abs();
            let mut psi = (col.1 / g, -col.0 / g);
            if psi.0 * ray.0 + psi.1 * ray.1 < 0 {
                psi = (-psi.0, -psi.1);
            }
            let rest: Vec<usize> = (0..t.columns.len()).filter(|&i| i != c).collect();
            let values: Vec<i64> = rest.iter().map(|&i| psi.0 * t.columns[i].0 + psi.1 * t.columns[i].1).collect();
            let h = gcd_all(values.iter().copied()).abs();
            let weights: Vec<i64> = values.iter().map(|v| v / h).collect();
            let target = Wps { weights, names: names_of(t, &rest) };
            let denom = cross(ray, col);
            let map_exponents: Option<Vec<(String, i64)>> = rest
                .iter()
                .map(|&i| {
                    let num = -cross(ray, t.columns[i]);
                    (num % denom == 0).then(|| (t.names[i].clone(), num / denom))
                })
                .collect();
            WallKind::Divisorial {
                contracted: t.names[c].clone(),
                center_dim: on_ray.len() - 1,
                center_vars: names_of(t, on_ray),
                target,
                map_exponents,
            }
        }
        _ => WallKind::Small,
    };
    Wall { ray, variables: names_of(t, on_ray), beyond: names_of(t, beyond), before: names_of(t, before), kind }
}

/// Walks the chambers of the secondary fan starting from the GIT chamber of `t`.
pub fn run_two_ray_game(t: &Rank2Toric) -> Result<LinkTrace, AmbientError> {
    let mut groups = t.ray_groups()?;
    let (start, reversed) = t.initial_chamber()?;
    if reversed {
        groups.reverse();
    }
    let k0 = groups
        .iter()
        .position(|(r, _)| *r == start.rays[0] || *r == start.rays[1])
        .expect("chamber ray is a column ray");
    let collect = |range: std::ops::Range<usize>| -> Vec<usize> {
        groups[range].iter().flat_map(|(_, m)| m.iter().copied()).collect()
    };
    let n = groups.len();
    let initial = {
        let (ray, on) = &groups[k0];
        classify(t, *ray, on, &collect(0..k0), &collect(k0 + 1..n))
    };
    let mut walls = Vec::new();
    let mut chambers = Vec::new();
    let mut models = Vec::new();
    let mut k = k0;
    loop {
        if k + 1 >= n {
            return Err(AmbientError::Degenerate("walk left the effective cone".into()));
        }
        chambers.push(ConeZ2::new(groups[k].0, groups[k + 1].0));
        let near = collect(0..k + 1);
        let far = collect(k + 1..n);
        let order: Vec<usize> = near.iter().chain(far.iter()).copied().collect();
        models.push(Rank2Toric {
            columns: order.iter().map(|&i| t.columns[i]).collect(),
            names: names_of(t, &order),
            split: near.len(),
        });
        let (ray, on) = &groups[k + 1];
        let wall = classify(t, *ray, on, &collect(k + 2..n), &collect(0..k + 1));
        let small = wall.is_small();
        walls.push(wall);
        if !small {
            break;
        }
        k += 1;
    }
    Ok(LinkTrace { models, chambers, initial, walls, loci: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::toric::blowup_ambient;

    #[test]
    fn main_blowup_game() {
        let p = Wps::new(&[1, 2, 3, 4, 7, 11], &["x", "y", "z", "t", "v", "w"]).unwrap();
        let t = blowup_ambient(&p, "w", &[6, 1, 7, 2, 9], "u").unwrap();
        let tr = run_two_ray_game(&t).unwrap();
        assert_eq!(tr.small_wall_count(), 2);
        match &tr.final_wall().kind {
            WallKind::Divisorial { contracted, center_vars, target, map_exponents, center_dim } => {
                assert_eq!(contracted, "x");
                assert_eq!(center_vars, &vec!["z".to_string()]);
                assert_eq!(*center_dim, 0);
                assert_eq!(target.label(), "P(1_u,6_w,1_y,1_z,2_t,3_v)");
                let m = map_exponents.as_ref().unwrap();
                assert!(m.contains(&("u".into(), 3)) && m.contains(&("w".into(), 7)));
            }
            k => panic!("unexpected {k:?}"),
        }
        match &tr.initial.kind {
            WallKind::Divisorial { contracted, target, .. } => {
                assert_eq!(contracted, "u");
                assert_eq!(target.weights, vec![11, 1, 2, 3, 4, 7]);
            }
            k => panic!("unexpected {k:?}"),
        }
    }

    #[test]
    fn plane_blowup_is_a_fibration() {
        let p = Wps::new(&[1, 1, 1], &["a", "b", "c"]).unwrap();
        let t = blowup_ambient(&p, "a", &[1, 1], "u").unwrap();
        let tr = run_two_ray_game(&t).unwrap();
        assert_eq!(tr.walls.len(), 1);
        assert!(matches!(tr.walls[0].kind, WallKind::Fibration { base_dim: 1, .. }));
    }
}
