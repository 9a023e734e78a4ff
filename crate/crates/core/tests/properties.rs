mod common;

use std::sync::Arc;

use birat::ambient::{blowup_ambient, run_two_ray_game, Rank2Toric, Wps};
use birat::qpoly::irreducible::{decide, Verdict};
use birat::qpoly::{resultant, substitute, toric_transform, Coefficient, Field, QPoly, Ring, Substitution, WeightVector};
use birat::singular::{weighted_blowup_discrepancy, Germ, QuotientSingularity};
use common::{chart_discrepancy, gcd_degree_mod_p};
use proptest::prelude::*;

fn ring3() -> Arc<Ring> {
    Ring::new(&["a", "b", "c"])
}

fn build(ring: &Arc<Ring>, terms: &[(i64, Vec<u32>)]) -> QPoly {
    terms.iter().fold(QPoly::zero(ring), |acc, (c, e)| {
        let m = ring.names().iter().zip(e).fold(QPoly::constant(ring, Coefficient::from_i64(*c)), |m, (n, k)| &m * &QPoly::var(ring, n).pow(*k));
        &acc + &m
    })
}

fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-9i64..=9, prop::collection::vec(0..=max_exp, 3)), 0..max_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn filtration_sums_back(f in poly(8, 4), w in prop::collection::vec(0i64..6, 3), r in 1i64..5) {
        let ring = ring3();
        let f = build(&ring, &f);
        let w = WeightVector::new(w, r);
        let sum = f.w_components(&w).values().fold(QPoly::zero(&ring), |a, c| &a + c);
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn substitution_is_a_ring_map(f in poly(6, 3), g in poly(6, 3), ia in poly(3, 2), ic in poly(3, 2)) {
        let ring = ring3();
        let (f, g) = (build(&ring, &f), build(&ring, &g));
        let s = Substitution::with(&ring, &[("a", build(&ring, &ia)), ("c", build(&ring, &ic))]);
        let sub = |h: &QPoly| substitute(h, &s).unwrap();
        prop_assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
    }

    #[test]
    fn toric_transform_laws(f in poly(8, 4), w in prop::collection::vec(0i64..5, 3)) {
        let ring = ring3();
        let f = build(&ring, &f);
        prop_assume!(!f.is_zero());
        let w = WeightVector::integral(w);
        let t = toric_transform(&f, &w, "u").unwrap();
        prop_assert_eq!(t.set(&[("u", 1)]).embed(&ring).unwrap(), f.clone());
        let low = f.w_component(&w, f.w_order(&w).unwrap());
        prop_assert_eq!(t.set(&[("u", 0)]).embed(&ring).unwrap(), low);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in prop::collection::vec(0u64..13, 2..5), g in prop::collection::vec(0u64..13, 2..5), shared in any::<bool>(), root in 0u64..13) {
        let p = 13;
        let ring = Ring::new(&["t"]);
        let dense = |v: &[u64]| -> Vec<u64> {
            if shared {
                let mut out = vec![0u64; v.len() + 1];
                for (i, c) in v.iter().enumerate() {
                    out[i + 1] = (out[i + 1] + c) % p;
                    out[i] = (out[i] + (p - root) * c) % p;
                }
                out
            } else {
                v.to_vec()
            }
        };
        let (fd, gd) = (dense(&f), dense(&g));
        prop_assume!(fd.last() != Some(&0) && gd.last() != Some(&0));
        let to_poly = |v: &[u64]| v.iter().enumerate().fold(QPoly::zero(&ring).into_field(Field::Prime(p)), |a, (i, c)| {
            &a + &QPoly::var(&ring, "t").pow(i as u32).scale(&Coefficient::modular(*c, p))
        });
        let r = resultant(&to_poly(&fd), &to_poly(&gd), 0).unwrap().constant_term();
        prop_assert_eq!(r.is_zero(), gcd_degree_mod_p(&fd, &gd, p) > 0);
    }

    #[test]
    fn reducible_verdicts_multiply_back(g in poly(4, 2), h in poly(4, 2)) {
        let ring = ring3();
        let f = &build(&ring, &g) * &build(&ring, &h);
        let d = decide(&f, 3, 1);
        if let Verdict::Reducible { .. } = d.verdict {
            let (a, b) = d.factors.unwrap();
            prop_assert_eq!(&a * &b, f);
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_unit_invariant(r in 2i64..14, a in 1i64..40, b in 1i64..40, c in 1i64..40, u in 1i64..40) {
        let q = QuotientSingularity::new(r, [a % r, b % r, c % r]);
        let k = q.canonical();
        prop_assert_eq!(k.canonical(), k);
        if num_integer::Integer::gcd(&u, &r) == 1 {
            let scaled = QuotientSingularity::new(r, [a * u % r, b * u % r, c * u % r]);
            prop_assert_eq!(scaled.canonical(), k);
        }
    }

    #[test]
    fn discrepancy_matches_chart_oracle(b in prop::collection::vec(1i64..5, 4), extra in poly(4, 3)) {
        let ring = Ring::new(&["x", "y", "z", "t"]);
        let mut f = birat::qpoly::parse("x*y + z^3 + t^4", &ring).unwrap();
        let extra: Vec<(i64, Vec<u32>)> = extra.into_iter().map(|(c, mut e)| { e.push(1); (c, e) }).collect();
        f = &f + &build(&ring, &extra);
        prop_assume!(!f.is_zero() && !f.is_constant() && f.constant_term().is_zero());
        let germ = Germ::new(&ring, vec![f.clone()]);
        let rec = weighted_blowup_discrepancy(&germ, &WeightVector::integral(b.clone()), 2, 0).unwrap();
        prop_assert_eq!(rec.discrepancy, chart_discrepancy(&[f], &b, 1));
    }

    #[test]
    fn game_is_invariant_under_row_scaling(k in 1i64..5, l in 1i64..5) {
        let p = Wps::new(&[1, 1, 1, 2, 3], &["x", "y", "z", "t", "w"]).unwrap();
        let t = blowup_ambient(&p, "x", &[4, 1, 2, 1], "u").unwrap();
        let scaled = Rank2Toric::new(t.columns.iter().map(|(a, b)| (a * k, b * l)).collect(), &t.names, t.split).unwrap();
        let kinds = |t: &Rank2Toric| run_two_ray_game(t).unwrap().walls.iter().map(|w| (w.variables.clone(), w.is_small())).collect::<Vec<_>>();
        prop_assert_eq!(kinds(&t), kinds(&scaled));
    }
}

#[test]
fn nef_cones_chain_through_shared_rays() {
    let p = Wps::new(&[1, 2, 3, 4, 7, 11], &["x", "y", "z", "t", "v", "w"]).unwrap();
    let t = blowup_ambient(&p, "w", &[6, 1, 7, 2, 9], "u").unwrap();
    let trace = run_two_ray_game(&t).unwrap();
    for pair in trace.chambers.windows(2) {
        assert_eq!(pair[0].rays[1], pair[1].rays[0]);
    }
    let hand: usize = {
        let mut rays: Vec<(i64, i64)> = t.columns.iter().copied().filter(|c| c.0 > 0 && c.1 > 0).collect();
        rays.sort_by(|a, b| (a.1 * b.0).cmp(&(b.1 * a.0)));
        rays.dedup_by(|a, b| a.0 * b.1 == a.1 * b.0);
        let beyond = |r: &(i64, i64)| t.columns.iter().filter(|c| c.1 * r.0 > r.1 * c.0).count();
        rays.iter().filter(|r| beyond(r) >= 2).count()
    };
    assert_eq!(trace.small_wall_count(), hand);
}
