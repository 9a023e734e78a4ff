//! Divisors of minimal discrepancy over cA/2 and cE6 germs.

use num_integer::Integer;
use serde::Serialize;

use super::discrepancy::{weighted_blowup_discrepancy, DiscrepancyRecord, Germ};
use super::quasismooth::{check_coordinate_point, sample_cone_points, jacobian_rank_at, two_variable_stratum_is_empty};
use super::quotient::QuotientSingularity;
use super::census::GermClass;
use super::SingularError;
use crate::qpoly::{substitute, Coefficient, QPoly, Rat, Ring, Substitution, WeightVector, DEFAULT_PRIME};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

fn check(name: &str, holds: bool, detail: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck { name: name.into(), holds, detail: detail.into() }
}

/// One divisor over the germ: `a_X = a_Y + ord · c` with `c = a_X(E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorRow {
    pub label: String,
    pub weights: String,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub a_y: Rat,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub ord: Rat,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub coefficient: Rat,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub a_x: Rat,
}

impl DivisorRow {
    pub fn consistent(&self) -> bool {
        self.a_x == self.a_y + self.ord * self.coefficient
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GermAnalysis {
    pub germ_type: GermClass,
    pub hypotheses: Vec<HypothesisCheck>,
    #[serde(serialize_with = "crate::report::ser_opt_display")]
    pub lambda: Option<Coefficient>,
    pub exceptional: DiscrepancyRecord,
    /// Type of the point of `Y` carrying the further divisors.
    pub chart_point: String,
    pub table: Vec<DivisorRow>,
    #[serde(serialize_with = "crate::report::ser_rat")]
    pub minimal_discrepancy: Rat,
    /// Number of divisors of minimal discrepancy, `E` included.
    pub count: usize,
    pub cited: Vec<String>,
    pub notes: Vec<String>,
}

impl GermAnalysis {
    pub fn a_x(&self, label: &str) -> Option<Rat> {
        self.table.iter().find(|r| r.label == label).map(|r| r.a_x)
    }
}

fn rat_mod1(r: Rat) -> Rat {
    r - Rat::from_integer(r.floor().to_integer())
}

/// The cyclic group acting on the chart of the weighted blowup with weights
/// `b` (over the lattice `Z^n + Z·action/r`) in which `chart` is the
/// exceptional coordinate. Returns the order and the weights of a generator.
pub fn chart_group(b: &WeightVector, quotient: Option<(i64, &[i64])>, chart: usize) -> (i64, Vec<i64>) {
    let n = b.len();
    let beta: Vec<Rat> = (0..n).map(|i| b.weight(i)).collect();
    let mut gens: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::from_integer((i == j) as i64)).collect())
        .collect();
    if let Some((r, a)) = quotient {
        gens.push(a.iter().map(|&x| Rat::new(x, r)).collect());
    }
    let act = |v: &Vec<Rat>| -> Vec<Rat> {
        let c = v[chart] / beta[chart];
        (0..n).map(|j| rat_mod1(if j == chart { c } else { v[j] - c * beta[j] })).collect()
    };
    let elems: Vec<Vec<Rat>> = gens.iter().map(act).collect();
    let mut group: Vec<Vec<Rat>> = vec![vec![Rat::from_integer(0); n]];
    let mut frontier = group.clone();
    while let Some(g) = frontier.pop() {
        for e in &elems {
            let s: Vec<Rat> = g.iter().zip(e).map(|(a, b)| rat_mod1(a + b)).collect();
            if !group.contains(&s) {
                group.push(s.clone());
                frontier.push(s);
            }
        }
        assert!(group.len() <= 10_000, "chart group too large");
    }
    let order = group.len() as i64;
    let generator = group
        .iter()
        .find(|g| g.iter().fold(1i64, |l, x| l.lcm(x.denom())) == order)
        .expect("the chart group is cyclic");
    (order, generator.iter().map(|x| (x * Rat::from_integer(order)).to_integer()).collect())
}

/// `xy + g(z², t)` modulo `Z_2(1,1,1,0)` with `g` of weighted order 6 under
/// `wt(z,t) = (1,2)` and `t³ ∈ g`.
pub fn analyze_ca2_germ(g: &QPoly, trials: u32, seed: u64) -> Result<GermAnalysis, SingularError> {
    let zt = g.ring().clone();
    let zi = match (zt.index("z"), zt.index("t")) {
        (Some(a), Some(_)) if zt.len() == 2 => a,
        _ => return Err(SingularError::Shape("g must be a polynomial in z and t".into())),
    };
    let w = WeightVector::integral(if zi == 0 { vec![1, 2] } else { vec![2, 1] });
    let order = g.w_order(&w).ok_or_else(|| SingularError::Hypothesis("g is zero".into()))?;
    let even = g.terms().all(|(m, _)| m.exponents()[zi] % 2 == 0);
    let t3 = g.contains("t^3");
    let hypotheses = vec![
        check("weighted order 6", order == Rat::from_integer(6), format!("order {}", order)),
        check("t^3 in g", t3, ""),
        check("g is a polynomial in z^2", even, ""),
    ];
    if let Some(bad) = hypotheses.iter().find(|h| !h.holds) {
        return Err(SingularError::Hypothesis(bad.name.clone()));
    }
    let ring = Ring::new(&["x", "y", "z", "t"]);
    let f = &(&QPoly::var(&ring, "x") * &QPoly::var(&ring, "y")) + &g.embed(&ring)?;
    let germ = Germ::new(&ring, vec![f]).with_quotient(2, &[1, 1, 1, 0]);
    let b = WeightVector::new(vec![5, 1, 1, 2], 2);
    let exceptional = weighted_blowup_discrepancy(&germ, &b, trials, seed)?;
    let c = exceptional.discrepancy;

    let (r, gen) = chart_group(&b, Some((2, &[1, 1, 1, 0][..])), 0);
    // y is eliminated on the x-chart; the orbifold coordinates are x̃, z̃, t̃.
    let local = QuotientSingularity::new(r, [gen[0], gen[2], gen[3]]);
    let three = Ring::new(&["x", "z", "t"]);
    let mut table = Vec::new();
    for i in 1..r {
        let wts: Vec<i64> = local.weights.iter().map(|a| (a * i).rem_euclid(r)).collect();
        let germ_y = Germ::new(&three, vec![]).with_quotient(r, &local.weights);
        let a_y = weighted_blowup_discrepancy(&germ_y, &WeightVector::new(wts.clone(), r), trials, seed)?.discrepancy;
        let ord = Rat::new(wts[0], r);
        table.push(DivisorRow {
            label: String::new(),
            weights: format!("1/{r}({},{},{})", wts[0], wts[1], wts[2]),
            a_y,
            ord,
            coefficient: c,
            a_x: a_y + ord * c,
        });
    }
    table.sort_by(|a, b| a.a_y.cmp(&b.a_y));
    for (k, row) in table.iter_mut().enumerate() {
        row.label = format!("F{}", k + 1);
    }
    let count = 1 + table.iter().filter(|row| row.a_x == c).count();
    Ok(GermAnalysis {
        germ_type: GermClass::CA2,
        hypotheses,
        lambda: None,
        exceptional,
        chart_point: local.to_string(),
        table,
        minimal_discrepancy: c,
        count,
        cited: vec![],
        notes: vec![format!("chart point of type {} (canonical {})", local, local.canonical())],
    })
}

/// Splits `f6` as `x² + xz(λt + g₂(y,z²)) + g₆(y,z²)`.
fn split_degree_six(f6: &QPoly) -> Result<(Coefficient, QPoly, QPoly), SingularError> {
    let ring = f6.ring().clone();
    let (xi, ti) = (ring.idx("x"), ring.idx("t"));
    if !f6.coefficient_of("x^2").is_one() {
        return Err(SingularError::Shape("the x^2 coefficient of the weight-6 part must be 1".into()));
    }
    let parts = f6.coefficients_in(xi);
    if parts.len() > 3 {
        return Err(SingularError::Shape("weight-6 part has x-degree above 2".into()));
    }
    let linear = parts.get(1).cloned().unwrap_or_else(|| QPoly::zero(&ring));
    let lambda = linear.coefficient_of("z*t");
    let g2z = &linear - &QPoly::monomial(&ring, crate::qpoly::parse_monomial("z*t", &ring)?, lambda.clone());
    if g2z.involves(ti) {
        return Err(SingularError::Shape("x-linear part is not z(λt + g₂(y,z²))".into()));
    }
    let g6 = parts[0].clone();
    if g6.involves(ti) {
        return Err(SingularError::Shape("x-free weight-6 part involves t".into()));
    }
    let g2 = g2z.exact_div(&QPoly::var(&ring, "z")).ok_or_else(|| SingularError::Shape("x-linear part not divisible by z".into()))?;
    Ok((lambda, g2, g6))
}

/// Hypothesis (a): `f6` is quasismooth in P(3,2,1,2) away from (0:0:0:1).
fn degree_six_quasismooth(f6: &QPoly, samples: usize, seed: u64) -> Result<(bool, String), SingularError> {
    let eqs = [f6.clone()];
    let mut detail = Vec::new();
    let mut ok = true;
    for v in ["x", "y", "z"] {
        let c = check_coordinate_point(&eqs, v)?;
        if c.on_variety && !c.quasismooth() {
            ok = false;
            detail.push(format!("p_{v} not quasismooth"));
        }
    }
    let ring = f6.ring();
    let (yi, ti) = (ring.idx("y"), ring.idx("t"));
    if !two_variable_stratum_is_empty(&eqs, yi, ti) {
        ok = false;
        detail.push("locus on the (y,t) stratum".into());
    }
    let all: Vec<usize> = (0..ring.len()).collect();
    let pts = sample_cone_points(&eqs, &all, samples, seed, DEFAULT_PRIME)?;
    let bad = pts.iter().filter(|p| jacobian_rank_at(&eqs, p, DEFAULT_PRIME) == 0).count();
    if bad > 0 {
        ok = false;
    }
    detail.push(format!("{} sampled points, {} singular", pts.len(), bad));
    Ok((ok, detail.join("; ")))
}

/// The cE6 germ `x² + xz(λt + g₂) + g₆ + x(t² + h)` at the origin of A⁴.
pub fn analyze_ce6_germ(f: &QPoly, trials: u32, seed: u64) -> Result<GermAnalysis, SingularError> {
    let ring = f.ring().clone();
    for v in ["x", "y", "z", "t"] {
        if ring.index(v).is_none() || ring.len() != 4 {
            return Err(SingularError::Shape("f must be a polynomial in x, y, z, t".into()));
        }
    }
    let (xi, ti) = (ring.idx("x"), ring.idx("t"));
    let w = WeightVector::integral(ring.names().iter().map(|n| match n.as_str() {
        "x" => 3,
        "y" => 2,
        "z" => 1,
        _ => 2,
    }).collect());
    if f.w_order(&w) != Some(Rat::from_integer(6)) {
        return Err(SingularError::Shape("weighted order under (3,2,1,2) must be 6".into()));
    }
    let f6 = f.w_component(&w, Rat::from_integer(6));
    let (lambda, g2, g6) = split_degree_six(&f6)?;
    let rest = f - &f6;
    let xt2 = rest.coefficient_of("x*t^2");
    let mut notes = vec!["the hypotheses name g₃(y,z²) while the equation uses g₂; g₂ of degree 2 is used".to_string()];
    let xpart_terms: Vec<_> = rest.terms().filter(|(m, _)| m.exponents()[xi] > 0).map(|(m, c)| (m.clone(), c.clone())).collect();
    let xpart = QPoly::from_terms(&ring, xpart_terms);
    let nonx = &rest - &xpart;
    if !nonx.is_zero() {
        notes.push(format!("{} higher-order terms without x lie outside the normal form", nonx.len()));
    }
    let h = (&xpart - &QPoly::monomial(&ring, crate::qpoly::parse_monomial("x*t^2", &ring)?, xt2.clone()))
        .exact_div(&QPoly::var(&ring, "x"))
        .expect("x-part divisible by x");
    let wh = WeightVector::integral(ring.names().iter().map(|n| match n.as_str() {
        "x" => 3,
        "y" => 2,
        "z" => 1,
        _ => 0,
    }).collect());
    let h_order = h.w_order(&wh);
    if h.involves(ti) {
        notes.push("h involves t".into());
    }
    let (qsm, qsm_detail) = degree_six_quasismooth(&f6, 32, seed)?;
    let hypotheses = vec![
        check("(a) degree-6 model quasismooth away from (0:0:0:1)", qsm, qsm_detail),
        check("(b) g2, g6 quasi-homogeneous", true, format!("g2 = {g2}, g6 = {g6}")),
        check("(c) h has weighted order at least 4", h_order.map_or(true, |o| o >= Rat::from_integer(4)),
            h_order.map_or("h = 0".to_string(), |o| format!("order {o}"))),
        check("x*t^2 in f", xt2.is_one(), format!("coefficient {xt2}")),
        check("y^3 in g6", g6.contains("y^3"), ""),
    ];
    if let Some(bad) = hypotheses.iter().find(|h| !h.holds) {
        return Err(SingularError::Hypothesis(bad.name.clone()));
    }

    let germ = Germ::new(&ring, vec![f.clone()]);
    let exceptional = weighted_blowup_discrepancy(&germ, &w, trials, seed)?;
    let c = exceptional.discrepancy;

    // t-chart: f(x t³, y t², z t, t²) / t⁶, then s = (f̃ − f̃|_{x=0}) / x.
    let t = QPoly::var(&ring, "t");
    let chart = Substitution::with(&ring, &[
        ("x", &QPoly::var(&ring, "x") * &t.pow(3)),
        ("y", &QPoly::var(&ring, "y") * &t.pow(2)),
        ("z", &QPoly::var(&ring, "z") * &t),
        ("t", t.pow(2)),
    ]);
    let ft = substitute(f, &chart)?.exact_div(&t.pow(6)).expect("weighted order 6");
    let five = ring.extended(&["s"]);
    let ft5 = ft.embed(&five)?;
    let g_part = ft5.set(&[("x", 0)]);
    let s_part = (&ft5 - &g_part).exact_div(&QPoly::var(&five, "x")).expect("divisible by x");
    let x5 = QPoly::var(&five, "x");
    let s5 = QPoly::var(&five, "s");
    let eq1 = &(&x5 * &s5) + &g_part;
    let eq2 = &s5 - &s_part;
    let action = [1, 0, 1, 1, 1];
    let chart_germ = Germ::new(&five, vec![eq1, eq2]).with_quotient(2, &action);
    let s0 = &s5 - &s_part.set(&[("t", 0)]);
    let mut table = Vec::new();
    for i in [1i64, 3, 5] {
        let b = WeightVector::new(vec![i, 2, 1, 1, 6 - i], 2);
        let rec = weighted_blowup_discrepancy(&chart_germ, &b, trials, seed)?;
        let ord = s0.w_order(&WeightVector::integral(b.numerators().to_vec())).expect("nonzero") / Rat::from_integer(2);
        table.push(DivisorRow {
            label: format!("F{i}"),
            weights: format!("1/2({},2,1,1,{})", i, 6 - i),
            a_y: rec.discrepancy,
            ord,
            coefficient: c,
            a_x: rec.discrepancy + ord * c,
        });
    }
    let count = 1 + table.iter().filter(|row| row.a_x == c).count();
    Ok(GermAnalysis {
        germ_type: GermClass::CE6,
        hypotheses,
        lambda: Some(lambda),
        exceptional,
        chart_point: "1/2 point of type cA/2 on the t-chart".into(),
        table,
        minimal_discrepancy: c,
        count,
        cited: vec!["no divisorial contraction of discrepancy above 1: external:[OkSolid Prop 3.16]".into()],
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse;

    #[test]
    fn ca2_table() {
        let r = Ring::new(&["z", "t"]);
        for g in ["t^3 + z^6", "t^3"] {
            let a = analyze_ca2_germ(&parse(g, &r).unwrap(), 5, 0).unwrap();
            let ax: Vec<Rat> = a.table.iter().map(|row| row.a_x).collect();
            assert_eq!(ax, vec![Rat::new(1, 2), Rat::new(1, 2), Rat::from_integer(1), Rat::from_integer(1)]);
            assert_eq!(a.count, 3);
            assert!(a.table.iter().all(DivisorRow::consistent));
        }
        assert!(analyze_ca2_germ(&parse("z^6", &r).unwrap(), 5, 0).is_err());
    }

    #[test]
    fn chart_group_of_ca2() {
        let (r, g) = chart_group(&WeightVector::new(vec![5, 1, 1, 2], 2), Some((2, &[1, 1, 1, 0][..])), 0);
        assert_eq!(r, 5);
        let q = QuotientSingularity::new(5, [g[0], g[2], g[3]]);
        assert_eq!(q.canonical().to_string(), "1/5(1,2,3)");
    }

    #[test]
    fn ce6_counts() {
        let r = Ring::new(&["x", "y", "z", "t"]);
        let with = parse("x^2 + x*z*t + x*z*y + y^3 + z^6 + x*t^2 + x*y^2", &r).unwrap();
        let a = analyze_ce6_germ(&with, 5, 0).unwrap();
        assert_eq!(a.count, 4);
        assert_eq!(a.a_x("F3"), Some(Rat::from_integer(1)));
        let without = parse("x^2 + x*z*y + y^3 + z^6 + x*t^2 + x*y^2", &r).unwrap();
        let b = analyze_ce6_germ(&without, 5, 0).unwrap();
        assert_eq!(b.count, 3);
        assert_eq!(b.a_x("F3"), Some(Rat::from_integer(2)));
        assert!(b.table.iter().all(DivisorRow::consistent));
    }
}
