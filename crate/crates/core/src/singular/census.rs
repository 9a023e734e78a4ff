//! Singularity reports at coordinate points and the census of a WCI.

use serde::Serialize;

use super::quasismooth::{check_coordinate_point, point_matrix, two_variable_stratum_is_empty, quasismooth_check, Location, QsmVerdict};
use super::quotient::QuotientSingularity;
use super::SingularError;
use crate::ambient::{analyze_ambient, AmbientAnalysis, WciSpec};
use crate::qpoly::linalg::rank;
use crate::qpoly::poly::gcd_all;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GermClass {
    #[serde(rename = "cA/2")]
    CA2,
    #[serde(rename = "cE6")]
    CE6,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SingularityKind {
    Smooth,
    Quotient {
        #[serde(serialize_with = "crate::report::ser_display")]
        raw: QuotientSingularity,
        #[serde(serialize_with = "crate::report::ser_display")]
        canonical: QuotientSingularity,
        terminal: bool,
    },
    NonQuasismooth {
        germ_class: GermClass,
    },
}

/// A variable removed by the implicit function theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub variable: String,
    pub equation: usize,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub point: String,
    pub kind: SingularityKind,
    pub witnesses: Vec<Elimination>,
    /// Variables left as local orbifold coordinates.
    pub coordinates: Vec<String>,
}

impl SingularityReport {
    pub fn quotient(&self) -> Option<QuotientSingularity> {
        match &self.kind {
            SingularityKind::Quotient { canonical, .. } => Some(*canonical),
            _ => None,
        }
    }

    pub fn is_singular(&self) -> bool {
        !matches!(self.kind, SingularityKind::Smooth)
    }
}

fn choices(k: usize, cands: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if k == cands.len() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in choices(k + 1, cands) {
        for &c in &cands[k] {
            if !rest.contains(&c) {
                let mut v = vec![c];
                v.extend(rest.iter().copied());
                out.push(v);
            }
        }
    }
    out
}

/// Local type of a quasismooth point `p_ξ` of a 3-fold WCI in a WPS.
pub fn classify_quotient_singularity(v: &WciSpec, variable: &str) -> Result<SingularityReport, SingularError> {
    let p = v.wps().ok_or_else(|| SingularError::Invalid("needs a weighted projective ambient".into()))?;
    let dim = p.weights.len() as i64 - 1 - v.equations.len() as i64;
    if dim != 3 {
        return Err(SingularError::Invalid(format!("expected a 3-fold, got dimension {dim}")));
    }
    let check = check_coordinate_point(&v.equations, variable)?;
    if !check.on_variety {
        return Err(SingularError::NotOnVariety(format!("p_{variable}")));
    }
    if !check.quasismooth() {
        return Err(SingularError::NotQuasismooth(format!("p_{variable}")));
    }
    let ring = v.ring();
    let xi = ring.idx(variable);
    let r = p.weights[xi];
    let (m, _) = point_matrix(&v.equations, xi);
    let mut order: Vec<usize> = (0..v.equations.len()).collect();
    order.sort_by_key(|&j| v.degrees[j][0]);
    let cands: Vec<Vec<usize>> =
        order.iter().map(|&j| (0..ring.len()).filter(|&i| !m[j][i].is_zero()).collect()).collect();
    let chosen = choices(0, &cands)
        .into_iter()
        .find(|sel| {
            let sub: Vec<Vec<_>> = order.iter().map(|&j| sel.iter().map(|&i| m[j][i].clone()).collect()).collect();
            rank(&sub) == sel.len()
        })
        .ok_or_else(|| SingularError::Unresolved(format!("no independent eliminations at p_{variable}")))?;
    let mut witnesses = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        let eta = chosen[k];
        let f = &v.equations[j];
        let mono = f
            .terms()
            .find(|(mm, _)| {
                let e = mm.exponents();
                e[eta] == 1 && (0..ring.len()).all(|i| i == eta || i == xi || e[i] == 0)
            })
            .map(|(mm, _)| crate::qpoly::QPoly::monomial(&ring, mm.clone(), f.field().one()).to_string())
            .expect("nonzero matrix entry comes from a monomial");
        witnesses.push(Elimination { variable: ring.names()[eta].clone(), equation: j, monomial: mono });
    }
    let rest: Vec<usize> = (0..ring.len()).filter(|i| *i != xi && !chosen.contains(i)).collect();
    let coordinates: Vec<String> = rest.iter().map(|&i| ring.names()[i].clone()).collect();
    let kind = if r == 1 {
        SingularityKind::Smooth
    } else {
        let raw = QuotientSingularity::new(r, [p.weights[rest[0]], p.weights[rest[1]], p.weights[rest[2]]]);
        SingularityKind::Quotient { raw, canonical: raw.canonical(), terminal: raw.is_terminal() }
    };
    Ok(SingularityReport { point: format!("p_{variable}"), kind, witnesses, coordinates })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub variables: Vec<String>,
    pub index: i64,
    pub verdict: QsmVerdict,
    /// Nonempty strata with three or more variables are not classified.
    pub analyzed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub ambient: AmbientAnalysis,
    /// Coordinate points lying on the variety.
    pub points: Vec<SingularityReport>,
    pub strata: Vec<StratumReport>,
    pub general: QsmVerdict,
}

impl Census {
    pub fn singular_points(&self) -> Vec<&SingularityReport> {
        self.points.iter().filter(|r| r.is_singular()).collect()
    }

    /// Quasismooth away from the listed singular points.
    pub fn clean(&self) -> bool {
        self.general.quasismooth && self.strata.iter().all(|s| !s.verdict.on_variety)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Coordinate points and singular strata of the ambient, plus a sampled
/// quasismoothness witness at general points.
pub fn singularity_census(v: &WciSpec, samples: usize, seed: u64, p: u64) -> Result<Census, SingularError> {
    let wps = v.wps().ok_or_else(|| SingularError::Invalid("needs a weighted projective ambient".into()))?;
    let degrees: Vec<i64> = v.degrees.iter().map(|d| d[0]).collect();
    let ambient = analyze_ambient(wps, &degrees)?;
    let mut points = Vec::new();
    for (i, name) in wps.names.iter().enumerate() {
        let c = check_coordinate_point(&v.equations, name)?;
        if !c.on_variety {
            continue;
        }
        if !c.quasismooth() {
            points.push(SingularityReport {
                point: format!("p_{name}"),
                kind: SingularityKind::NonQuasismooth { germ_class: GermClass::Unclassified },
                witnesses: Vec::new(),
                coordinates: Vec::new(),
            });
        } else if wps.weights[i] > 1 {
            points.push(classify_quotient_singularity(v, name)?);
        }
    }
    let n = wps.weights.len();
    let mut strata = Vec::new();
    for k in 2..n {
        for s in subsets(n, k) {
            let g = gcd_all(s.iter().map(|&i| wps.weights[i]));
            if g <= 1 {
                continue;
            }
            let names: Vec<String> = s.iter().map(|&i| wps.names[i].clone()).collect();
            let label = format!("stratum({})", names.join(","));
            let verdict = if k == 2 && two_variable_stratum_is_empty(&v.equations, s[0], s[1]) {
                QsmVerdict {
                    location: label,
                    method: super::quasismooth::Method::Exact,
                    on_variety: false,
                    quasismooth: true,
                    samples: 0,
                    witnesses: vec!["restricted forms have no common root".into()],
                }
            } else if k <= v.equations.len() {
                QsmVerdict {
                    location: label,
                    method: super::quasismooth::Method::Exact,
                    on_variety: true,
                    quasismooth: false,
                    samples: 0,
                    witnesses: vec!["not analyzed".into()],
                }
            } else {
                quasismooth_check(v, &Location::Stratum { variables: names.clone() }, p)?
            };
            let analyzed = k == 2 || verdict.method == super::quasismooth::Method::Sampled;
            strata.push(StratumReport { variables: names, index: g, verdict, analyzed });
        }
    }
    let general = quasismooth_check(v, &Location::Sampled { count: samples, seed }, p)?;
    Ok(Census { ambient, points, strata, general })
}
