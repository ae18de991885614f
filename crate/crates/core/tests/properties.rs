//! Randomized properties over the public API.

mod common;

use linext::catalog;
use linext::convex::{
    indicator_family, sup_family_eval, supports_within, verify_subgradient_within, AffExt, DomainHint,
};
use linext::extreal::sum;
use linext::geometry::{dot, orthogonalize, project_out};
use linext::grid::farey_simplex;
use linext::precision::DEFAULT_DIGITS;
use linext::sampling;
use linext::scoring::{
    dists, expected_score, extended_expected_score, ill_certificate, interior_finite, interior_finite_via_eval,
    subtangent_rule, subtangent_rule_with_subgradients, verify_properness, Dist, IllVerdict, OutcomeSet,
    ScoreTable,
};
use linext::{ExtReal, LinExt, Polytope, RatVec, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{r, tolerance};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| r(n, d))
}

fn extreal() -> impl Strategy<Value = ExtReal> {
    prop_oneof![
        1 => Just(ExtReal::PosInf),
        1 => Just(ExtReal::NegInf),
        6 => small().prop_map(ExtReal::Finite),
    ]
}

fn rho(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(2..=16i64);
    r(rng.gen_range(1..d), d)
}

/// `h(ρx + (1−ρ)x′) ≤ ρh(x) + (1−ρ)h(x′)` whenever the right side is legal.
fn midpoint_convex(h: impl Fn(&RatVec) -> ExtReal, x: &RatVec, y: &RatVec, rho: &Rational) -> bool {
    let one_minus = Rational::one() - rho;
    let z = x.scale(rho).add(&y.scale(&one_minus)).unwrap();
    match h(x).scale(rho).add(&h(y).scale(&one_minus)) {
        Ok(rhs) => h(&z) <= rhs,
        Err(_) => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn extreal_sum_commutes_and_associates(a in extreal(), b in extreal(), c in extreal()) {
        if let Ok(ab) = a.add(&b) {
            prop_assert_eq!(&ab, &b.add(&a).unwrap());
            if let (Ok(bc), Ok(left)) = (b.add(&c), ab.add(&c)) {
                if let Ok(right) = a.add(&bc) {
                    prop_assert_eq!(left, right);
                }
            }
        } else {
            prop_assert!(b.add(&a).is_err());
        }
    }

    #[test]
    fn scaling_distributes_and_composes(a in extreal(), b in extreal(), x in small(), y in small()) {
        if let Ok(s) = a.add(&b) {
            prop_assert_eq!(s.scale(&x), a.scale(&x).add(&b.scale(&x)).unwrap());
        }
        prop_assert_eq!(a.scale(&y).scale(&x), a.scale(&(&x * &y)));
        prop_assert!(ExtReal::NegInf <= a && a <= ExtReal::PosInf);
    }

    #[test]
    fn orthogonalize_is_pairwise_orthogonal(seed in any::<u64>(), dim in 1usize..=5, count in 1usize..=5) {
        let mut g = rng(seed);
        let vs: Vec<RatVec> = (0..count.min(dim)).map(|_| sampling::vector(&mut g, dim)).collect();
        if let Ok(out) = orthogonalize(&vs) {
            for i in 0..out.len() {
                for j in 0..i {
                    prop_assert!(dot(&out[i], &out[j]).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn linext_epigraph_is_convex(seed in any::<u64>(), dim in 1usize..=5) {
        let mut g = rng(seed);
        let f = sampling::linext(&mut g, dim, None);
        for _ in 0..8 {
            let x = sampling::point_for(&mut g, &f);
            let y = sampling::point_for(&mut g, &f);
            let p = rho(&mut g);
            prop_assert!(midpoint_convex(|z| f.eval(z).unwrap(), &x, &y, &p), "{} at {} {}", f, x, y);
        }
    }

    #[test]
    fn affext_is_convex_and_rebase_preserves_values(seed in any::<u64>(), dim in 1usize..=4) {
        let mut g = rng(seed);
        let f = sampling::linext(&mut g, dim, None);
        let anchor = sampling::vector(&mut g, dim);
        let h = AffExt::new(f.clone(), anchor.clone(), sampling::small(&mut g)).unwrap();
        let shifted = |g: &mut ChaCha8Rng| sampling::point_for(g, &f).add(&anchor).unwrap();
        for _ in 0..6 {
            let x = shifted(&mut g);
            let y = shifted(&mut g);
            let p = rho(&mut g);
            prop_assert!(midpoint_convex(|z| h.eval(z).unwrap(), &x, &y, &p));
        }
        // Rebase at points where h is finite: the anchor plus finite directions.
        let x1 = project_out(&sampling::vector(&mut g, dim), f.dirs()).add(&anchor).unwrap();
        let moved = h.rebase(&x1).unwrap();
        for _ in 0..10 {
            let x = shifted(&mut g);
            prop_assert_eq!(moved.eval(&x).unwrap(), h.eval(&x).unwrap());
        }
    }

    #[test]
    fn indicator_family_sup_is_infinite_off_domain(seed in any::<u64>()) {
        let mut g = rng(seed);
        // A random polygon inside the simplex, and a point outside it.
        let verts: Vec<RatVec> = (0..g.gen_range(1..=4)).map(|_| sampling::dist(&mut g, 3)).collect();
        let domain = Polytope::new(verts.clone()).unwrap();
        let x = RatVec::new(vec![r(g.gen_range(-3..=3), 2), r(g.gen_range(-3..=3), 2), r(g.gen_range(-3..=3), 2)]);
        if !domain.contains(&x).unwrap() {
            let ladder = [r(10, 1), r(1000, 1), r(1_000_000, 1)];
            let family = indicator_family(&domain, &x, &ladder).unwrap();
            prop_assert_eq!(family.len(), ladder.len());
            prop_assert_eq!(sup_family_eval(&family, &x).unwrap(), ExtReal::Finite(r(1_000_000, 1)));
            for z in &verts {
                prop_assert_eq!(sup_family_eval(&family, z).unwrap(), ExtReal::NegInf);
            }
        }
    }

    #[test]
    fn expected_score_linext_matches_sum(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = rng(seed);
        let outcomes = OutcomeSet::numbered(n).unwrap();
        let preds: Vec<Dist> = (0..3).map(|_| Dist::new(sampling::dist(&mut g, n)).unwrap()).collect();
        let mut preds_unique = preds.clone();
        preds_unique.dedup();
        let table = ScoreTable::from_fn(outcomes, preds_unique.clone(), |p, y| {
            if p.prob(y).is_zero() && (y % 2 == 0) { ExtReal::NegInf } else { ExtReal::Finite(p.prob(y) - r(1, 3)) }
        });
        let Ok(table) = table else { return Ok(()); };
        for p in &preds_unique {
            let h = extended_expected_score(&table, p).unwrap();
            for (y, s) in table.row(p).unwrap().iter().enumerate() {
                prop_assert_eq!(&h.eval(&RatVec::unit(n, y)).unwrap(), s);
            }
            for _ in 0..5 {
                let q = Dist::new(sampling::dist(&mut g, n)).unwrap();
                prop_assert_eq!(h.eval(q.probs()).unwrap(), expected_score(&table, p, &q).unwrap());
            }
        }
    }

    #[test]
    fn interior_finite_routes_agree(seed in any::<u64>(), n in 2usize..=4) {
        let mut g = rng(seed);
        let f = sampling::linext(&mut g, n, None);
        let p = match g.gen_range(0..3) {
            0 => RatVec::unit(n, g.gen_range(0..n)),
            1 => RatVec::new(vec![r(1, n as i64); n]),
            _ => sampling::dist(&mut g, n),
        };
        let p = Dist::new(p).unwrap();
        prop_assert_eq!(interior_finite(&f, &p).unwrap(), interior_finite_via_eval(&f, &p).unwrap());
    }
}

#[test]
fn sup_characterization_on_catalog_functions() {
    let outcomes = OutcomeSet::numbered(2).unwrap();
    let ladder = [r(10, 1), r(1000, 1), r(1_000_000, 1)];
    let simplex = Polytope::new(vec![RatVec::unit(2, 0), RatVec::unit(2, 1)]).unwrap();
    let entries = [
        catalog::brier(&outcomes).unwrap(),
        catalog::support_size(&outcomes).unwrap(),
        catalog::neg_entropy(&outcomes, DEFAULT_DIGITS).unwrap(),
    ];
    let tol = tolerance();
    for entry in &entries {
        let grid = farey_simplex(2, 8);
        let mut family: Vec<AffExt> = grid.iter().map(|x0| entry.spec.support_at(x0).unwrap()).collect();
        let off: Vec<RatVec> = linext::grid::farey_box(2, &r(-1, 1), &r(2, 1), 2)
            .into_iter()
            .filter(|x| !simplex.contains(x).unwrap())
            .collect();
        for x in &off {
            family.extend(indicator_family(&simplex, x, &ladder).unwrap());
        }
        for x in &grid {
            let got = sup_family_eval(&family, x).unwrap();
            let want = entry.spec.eval(x).unwrap();
            assert!(common::close(&got, &want, &tol), "{} at {x}: {got} vs {want}", entry.name);
        }
        for x in &off {
            let got = sup_family_eval(&family, x).unwrap();
            assert!(got >= ExtReal::Finite(r(1_000_000, 1)), "{} at {x}: {got}", entry.name);
        }
    }
}

#[test]
fn support_iff_subgradient_on_catalog() {
    let outcomes = OutcomeSet::numbered(3).unwrap();
    let entries = [
        catalog::brier(&outcomes).unwrap(),
        catalog::support_size(&outcomes).unwrap(),
        catalog::hyperplane(&outcomes).unwrap(),
        catalog::step_1d(),
        catalog::intro_pair(),
    ];
    let tol = tolerance();
    for entry in &entries {
        for x0 in entry.default_grid.iter().take(40) {
            let f = entry.spec.subgradient(x0).unwrap();
            let gx0 = entry.spec.eval(x0).unwrap().finite().unwrap().clone();
            let good = AffExt::new(f.clone(), x0.clone(), gx0.clone()).unwrap();
            let sub = verify_subgradient_within(&entry.spec, x0, &f, &entry.test_points, &tol).unwrap();
            let sup = supports_within(&good, &entry.spec, x0, &entry.test_points, &tol).unwrap();
            assert_eq!(sub.passed(), sup.passed(), "{} at {x0}", entry.name);
            assert!(sup.passed());
            // A wrong offset breaks support but not the subgradient.
            let off = AffExt::new(f.clone(), x0.clone(), gx0 - Rational::one()).unwrap();
            assert!(!supports_within(&off, &entry.spec, x0, &entry.test_points, &tol).unwrap().passed());
            // Doubling a nonzero finite part usually breaks both.
            if f.depth() == 0 && !f.tail().is_zero() && matches!(entry.spec.domain(), DomainHint::Everywhere) {
                let bad = LinExt::finite(f.tail().scale(&r(3, 1)));
                let h = AffExt::new(bad.clone(), x0.clone(), entry.spec.eval(x0).unwrap().finite().unwrap().clone()).unwrap();
                assert_eq!(
                    verify_subgradient_within(&entry.spec, x0, &bad, &entry.test_points, &tol).unwrap().passed(),
                    supports_within(&h, &entry.spec, x0, &entry.test_points, &tol).unwrap().passed()
                );
            }
        }
    }
}

#[test]
fn subtangent_rules_of_catalog_are_regular_and_proper() {
    for n in [2, 3] {
        let outcomes = OutcomeSet::numbered(n).unwrap();
        let grid = dists(farey_simplex(n, if n == 2 { 12 } else { 5 })).unwrap();
        for entry in [
            catalog::neg_entropy(&outcomes, DEFAULT_DIGITS).unwrap(),
            catalog::brier(&outcomes).unwrap(),
            catalog::support_size(&outcomes).unwrap(),
            catalog::hyperplane(&outcomes).unwrap(),
        ] {
            let table = subtangent_rule(&entry.spec, &outcomes, &grid).unwrap();
            assert!(table.is_regular(), "{}", entry.name);
            assert!(verify_properness(&table).unwrap().is_proper(), "{}", entry.name);
        }
    }
}

#[test]
fn ill_verdicts_match_regularity() {
    let d = DEFAULT_DIGITS;
    let outcomes = OutcomeSet::numbered(2).unwrap();
    let closure = catalog::Closure::CLOSED;
    for (a, b) in [(r(1, 4), r(3, 4)), (r(0, 1), r(1, 2)), (r(0, 1), r(1, 1)), (r(1, 3), r(1, 1))] {
        let entry = catalog::squeezed_neg_entropy(&a, &b, closure, d).unwrap();
        let grid = dists(farey_simplex(2, 12).into_iter().filter(|q| entry.spec.in_domain(q).unwrap()).collect()).unwrap();
        match ill_certificate(&entry.spec, &grid).unwrap() {
            IllVerdict::Certified { witnesses } => {
                let fs: Vec<LinExt> = witnesses.iter().map(|w| w.f.clone()).collect();
                let table = subtangent_rule_with_subgradients(&entry.spec, &outcomes, &grid, &fs).unwrap();
                assert!(table.is_regular(), "{}", entry.name);
            }
            IllVerdict::FailsAt { p, f } => {
                let table =
                    subtangent_rule_with_subgradients(&entry.spec, &outcomes, std::slice::from_ref(&p), &[f]).unwrap();
                assert!(table.row(&p).unwrap().contains(&ExtReal::PosInf), "{} at {p}", entry.name);
            }
        }
    }
}

#[test]
fn sum_of_empty_is_zero() {
    assert_eq!(sum([]).unwrap(), ExtReal::zero());
}
