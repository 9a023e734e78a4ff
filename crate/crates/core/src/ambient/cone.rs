//! Nef and movable cones of a restricted 2-ray game.

use serde::Serialize;

use super::game::{LinkTrace, WallKind};
use super::toric::{primitive, same_ray, ConeZ2, Vec2};
use super::wci::WciSpec;
use super::AmbientError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    /// Nef cones of the models of the restricted game, in walking order.
    pub nef: Vec<ConeZ2>,
    pub mov: ConeZ2,
    /// Class of the anticanonical divisor: sum of columns minus sum of equation bidegrees.
    pub anticanonical: Vec2,
    pub distinguished: Option<(String, Vec2)>,
    pub anticanonical_is_distinguished: bool,
    pub anticanonical_on_boundary: bool,
    pub anticanonical_in_interior: bool,
}

/// Merges the ambient chambers across walls that restrict to isomorphisms
/// (as recorded in `trace.loci`), and locates `-K` relative to the movable cone.
pub fn cone_calculus(trace: &LinkTrace, restricted: &WciSpec, distinguished: Option<&str>) -> Result<ConeReport, AmbientError> {
    let toric = match &restricted.ambient {
        super::wci::Ambient::Toric(t) => t,
        _ => return Err(AmbientError::Invalid("cone calculus needs a toric ambient".into())),
    };
    if trace.chambers.is_empty() {
        return Err(AmbientError::Invalid("empty trace".into()));
    }
    let mut bidegrees = Vec::new();
    for d in &restricted.degrees {
        if d.len() != 2 {
            return Err(AmbientError::Invalid("anticanonical class needs bidegrees".into()));
        }
        bidegrees.push((d[0], d[1]));
    }
    let sum_cols = toric.columns.iter().fold((0, 0), |a, c| (a.0 + c.0, a.1 + c.1));
    let anticanonical = bidegrees.iter().fold(sum_cols, |a, d| (a.0 - d.0, a.1 - d.1));

    let iso = |i: usize| {
        trace.loci.iter().any(|l| l.wall == i && l.restricts_to_isomorphism == Some(true))
    };
    let first = trace.chambers[0].rays;
    let near0 = if same_ray(first[0], trace.initial.ray) { first[0] } else { first[1] };
    let mut nef = Vec::new();
    let mut from = near0;
    for (i, wall) in trace.walls.iter().enumerate() {
        if wall.is_small() && iso(i) {
            continue;
        }
        nef.push(ConeZ2::new(from, wall.ray));
        from = wall.ray;
    }
    let far = trace.final_wall().ray;
    let mov = ConeZ2::new(near0, far);
    let dist = distinguished.map(|n| (n.to_string(), toric.column(n)));
    let ak = primitive(anticanonical);
    Ok(ConeReport {
        nef,
        mov,
        anticanonical,
        anticanonical_is_distinguished: dist.as_ref().map(|(_, c)| *c == anticanonical).unwrap_or(false),
        distinguished: dist,
        anticanonical_on_boundary: mov.on_boundary(ak),
        anticanonical_in_interior: mov.in_interior(ak),
    })
}

/// Whether the final wall of the trace is a divisorial contraction.
pub fn ends_divisorially(trace: &LinkTrace) -> bool {
    matches!(trace.final_wall().kind, WallKind::Divisorial { .. })
}
