//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use birat::ambient::{LinkTrace, Rank2Toric, WciSpec};
use birat::links::{
    build_involutions, classify_links, construct_link_sigma, normal_form_x1214, random_member, run_exclusion_blowups,
    singularity_census_hat_x, verify_involution, ClassifyOptions, LinkReport, LinkVerdict, MemberOptions,
};
use birat::qpoly::{
    resultant::binary_form_resultant, substitute, toric_transform, Coefficient, Field, QPoly, Rat, Ring, Substitution, WeightVector,
    DEFAULT_PRIME,
};
use birat::singular::{analyze_ca2_germ, singularity_census, SingularityKind};
use common::{chart_discrepancy, gcd_degree_mod_p, random_poly, sylvester_det_mod_p};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = DEFAULT_PRIME;

fn member(seed: u64, lambda_zero: bool) -> WciSpec {
    let o = if lambda_zero { MemberOptions::lambda_zero() } else { MemberOptions::default() };
    random_member(seed, P, &o).unwrap()
}

fn census_of_x() {
    for seed in [1, 2, 3] {
        let start = Instant::now();
        let c = singularity_census(&member(seed, false), 20, seed, P).unwrap();
        assert_eq!(c.ambient.fano_index, 2);
        let sing = c.singular_points();
        assert_eq!(sing.len(), 1, "seed {seed}");
        assert_eq!(sing[0].point, "p_w");
        assert_eq!(sing[0].quotient().unwrap().to_string(), "1/11(1,2,9)");
        assert!(c.clean());
        assert!(start.elapsed() < Duration::from_secs(10));
    }
}

fn link_sigma() {
    let start = Instant::now();
    let nf = {
        let x = member(4, false);
        normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap()
    };
    let s = construct_link_sigma(&nf).unwrap();
    let hx = &s.hat_x;
    let spec = hx.spec();
    assert_eq!(spec.wps().unwrap().weights, vec![1, 1, 1, 2, 3]);
    assert_eq!(spec.degrees, vec![vec![7]]);
    assert!(hx.equation.coefficient_of("v^2*u") == Coefficient::from_i64(1).into_field(hx.equation.field()));
    assert_eq!(hx.equation.coefficient_of("y*z^2*v*u"), nf.lambda);
    assert!(!nf.lambda.is_zero());
    assert_eq!(hx.reassemble(), hx.equation);
    assert_eq!(s.image_point, "p_z");
    let ring = nf.ring.clone();
    for (g, f) in s.proper_transform.equations.iter().zip(&nf.equations) {
        assert_eq!(&g.set(&[("u", 1)]).embed(&ring).unwrap(), f);
    }
    assert!(start.elapsed() < Duration::from_secs(30));
}

fn hat_x_for(seed: u64, lambda_zero: bool) -> (birat::links::NormalFormX1214, birat::links::NormalFormHatX) {
    let x = member(seed, lambda_zero);
    let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
    let hx = construct_link_sigma(&nf).unwrap().hat_x;
    (nf, hx)
}

fn census_of_hat_x() {
    for seed in [5, 6] {
        let (_, hx) = hat_x_for(seed, false);
        let c = singularity_census_hat_x(&hx, 20, seed, P).unwrap();
        let mut labels = c.labels();
        labels.sort();
        let expect: Vec<(String, String)> =
            [("p_t", "1/2(1,1,1)"), ("p_v", "1/3(1,1,2)"), ("p_z", "cE6")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(labels, expect);
        let q = c.census.points.iter().find(|r| r.point == "p_z").unwrap();
        assert!(matches!(q.kind, SingularityKind::NonQuasismooth { .. }));
    }
}

fn germ_tables() {
    let zt = Ring::new(&["z", "t"]);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..4 {
        let mut g = birat::qpoly::parse("t^3 + z^6", &zt).unwrap();
        if k > 0 {
            let extra = ["z^2*t^2", "z^4*t", "z^8", "t^4"][k];
            g = &g + &birat::qpoly::parse(extra, &zt).unwrap().scale(&Coefficient::from_i64(rng.gen_range(1..9)));
        }
        let a = analyze_ca2_germ(&g, 5, 0).unwrap();
        let ax: Vec<Rat> = a.table.iter().map(|r| r.a_x).collect();
        assert_eq!(ax, vec![Rat::new(1, 2), Rat::new(1, 2), Rat::from_integer(1), Rat::from_integer(1)]);
    }
    for (seed, lambda_zero, count, f3) in [(7, false, 4, 1), (8, true, 3, 2)] {
        let (_, hx) = hat_x_for(seed, lambda_zero);
        let c = singularity_census_hat_x(&hx, 10, seed, P).unwrap();
        assert_eq!(c.germ.count, count);
        assert_eq!(c.germ.a_x("F3"), Some(Rat::from_integer(f3)));
    }
}

fn local(eqs: &[QPoly], at: &str, names: &[&str]) -> Vec<QPoly> {
    let r = Ring::new(names);
    eqs.iter().map(|f| f.set(&[(at, 1)]).embed(&r).unwrap()).collect()
}

fn discrepancies() {
    let start = Instant::now();
    let (nf, hx) = hat_x_for(10, false);
    let ex = run_exclusion_blowups(&hx, 0).unwrap();
    let first = ex.first.extraction.as_ref().unwrap();
    assert_eq!(first.discrepancy, Rat::from_integer(1));
    let germ = local(std::slice::from_ref(&ex.condition.equation), "x", &["y", "z", "t", "w"]);
    assert_eq!(chart_discrepancy(&germ, &[4, 1, 2, 1], 1), Rat::from_integer(1));
    let second = ex.second.extraction.as_ref().unwrap();
    assert_eq!(second.discrepancy, Rat::from_integer(1));
    let germ2 = local(&ex.reembedding.equations, "x", &["y", "z", "t", "w", "s"]);
    assert_eq!(chart_discrepancy(&germ2, &[2, 1, 2, 1, 4], 1), Rat::from_integer(1));
    let s = construct_link_sigma(&nf).unwrap();
    assert_eq!(s.kawamata.discrepancy, Rat::new(1, 11));
    let germ3 = local(&nf.equations, "w", &["x", "y", "z", "t", "v"]);
    assert_eq!(chart_discrepancy(&germ3, &[6, 1, 7, 2, 9], 11), Rat::new(1, 11));
    assert!(start.elapsed() < Duration::from_secs(5));
}

fn columns(t: &LinkTrace) -> &Rank2Toric {
    &t.models[0]
}

fn cone_certificates() {
    for (seed, lambda_zero) in [(11, false), (12, true)] {
        let (_, hx) = hat_x_for(seed, lambda_zero);
        let ex = run_exclusion_blowups(&hx, 0).unwrap();
        for r in [&ex.first, &ex.second] {
            let c = r.cones.as_ref().unwrap();
            let t = columns(r.trace.as_ref().unwrap());
            assert_eq!(c.mov.rays, [t.column("x"), t.column("z")]);
            assert_eq!(c.anticanonical, t.column("z"));
            assert!(c.anticanonical_on_boundary && !c.anticanonical_in_interior);
            assert!(matches!(r.verdict, LinkVerdict::NotSarkisov { .. }));
        }
    }
}

fn involutions() {
    for seed in [13, 14] {
        let start = Instant::now();
        let (nf, hx) = hat_x_for(seed, false);
        let inv = build_involutions(&nf, &hx).unwrap();
        assert_eq!(substitute(&hx.equation, &inv.chi_hat).unwrap(), hx.equation);
        let w = verify_involution(&nf.spec(), &inv.involution_on_x, 100, seed, P).unwrap();
        assert!(w.holds, "{w:?}");
        assert!(start.elapsed() < Duration::from_secs(5));
    }
}

fn links_of(c: &[LinkReport]) -> usize {
    c.iter().filter(|r| r.verdict.is_link()).count()
}

fn classification() {
    for (seed, lambda_zero, links) in [(15, false, 2), (16, true, 1)] {
        let c = classify_links(&member(seed, lambda_zero), &ClassifyOptions::default()).unwrap();
        assert_eq!(links_of(&c.from_hat_x), links);
        assert_eq!(c.elementary_links_from_hat_x, links);
        assert_eq!(c.divisors.len(), c.hat_census.germ.count);
        assert_eq!(c.divisors.len(), 2 + links);
        assert_eq!(links_of(&c.from_x), 1);
        assert_eq!(c.assumptions.len(), 4);
        for a in &c.assumptions {
            assert!(c.summary.contains(a.as_str()));
        }
    }
}

/// Binary form with `coeffs[i]` the coefficient of `s^(m-i) t^i`.
fn fp(ring: &std::sync::Arc<Ring>, coeffs: &[u64], p: u64) -> QPoly {
    let m = coeffs.len() - 1;
    let mut out = QPoly::zero(ring).into_field(Field::Prime(p));
    for (i, &c) in coeffs.iter().enumerate() {
        let mono = &QPoly::var(ring, "s").pow((m - i) as u32) * &QPoly::var(ring, "t").pow(i as u32);
        out = &out + &mono.scale(&Coefficient::modular(c, p));
    }
    out
}

fn property_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let ring = Ring::new(&["a", "b", "c"]);
    for _ in 0..1000 {
        let f = random_poly(&ring, &mut rng, 6, 3);
        let g = random_poly(&ring, &mut rng, 4, 2);
        let w = WeightVector::new((0..3).map(|_| rng.gen_range(1..5)).collect(), rng.gen_range(1..4));
        let sum = f.w_components(&w).values().fold(QPoly::zero(&ring), |a, c| &a + c);
        assert_eq!(sum, f);
        let imgs: Vec<(&str, QPoly)> = vec![("a", random_poly(&ring, &mut rng, 2, 1)), ("c", random_poly(&ring, &mut rng, 2, 1))];
        let s = Substitution::with(&ring, &imgs);
        let sub = |h: &QPoly| substitute(h, &s).unwrap();
        assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));
        assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
        if !f.is_zero() {
            let wi = WeightVector::integral((0..3).map(|_| rng.gen_range(0..4)).collect());
            let tt = toric_transform(&f, &wi, "u").unwrap();
            assert_eq!(tt.set(&[("u", 1)]).embed(&ring).unwrap(), f);
            let low = f.w_component(&wi, f.w_order(&wi).unwrap());
            assert_eq!(tt.set(&[("u", 0)]).embed(&ring).unwrap(), low);
        }
    }
    let p = 101;
    let st = Ring::new(&["s", "t"]);
    for k in 0..200 {
        let (m, n) = (rng.gen_range(1..5usize), rng.gen_range(1..5usize));
        let mut f: Vec<u64> = (0..=m).map(|_| rng.gen_range(0..p)).collect();
        let mut g: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..p)).collect();
        if k % 2 == 0 {
            let root = rng.gen_range(0..p);
            f = mul_linear(&f[..m], root, p);
            g = mul_linear(&g[..n], root, p);
        }
        let res = binary_form_resultant(&fp(&st, &f, p), &fp(&st, &g, p), 0, 1, m, n).constant_term();
        let res = res.into_field(Field::Prime(p)).residue().unwrap();
        let high_first = |v: &[u64]| v.iter().rev().copied().collect::<Vec<u64>>();
        assert_eq!(res, sylvester_det_mod_p(&high_first(&f), &high_first(&g), p));
        let shared = gcd_degree_mod_p(&f, &g, p) > 0 || (f[m] == 0 && g[n] == 0);
        assert_eq!(res == 0, shared);
    }
    assert!(start.elapsed() < Duration::from_secs(60));
}

/// `(t - root·s) · h` for a form `h` given by its coefficients, lowest `t`-power first.
fn mul_linear(h: &[u64], root: u64, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; h.len() + 1];
    for (i, &c) in h.iter().enumerate() {
        out[i + 1] = (out[i + 1] + c) % p;
        out[i] = (out[i] + (p - root) * c % p) % p;
    }
    out
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("census of X(12,14): index 2, one point 1/11(1,2,9)", census_of_x),
        ("link to the degree-7 hypersurface", link_sigma),
        ("census of the degree-7 hypersurface", census_of_hat_x),
        ("cA/2 and cE6 germ tables", germ_tables),
        ("discrepancies against the chart oracle", discrepancies),
        ("cone certificates of both exclusions", cone_certificates),
        ("involutions", involutions),
        ("link classification", classification),
        ("property suites", property_suites),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        println!("criterion {}: {} {} ({:.2}s)", i + 1, if ok { "PASS" } else { "FAIL" }, name, start.elapsed().as_secs_f64());
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
