mod common;

use proptest::prelude::*;

use common::{element, setups};
use strata_core::config::Setup;
use strata_core::conjugacy::{Reflections, Twisted};
use strata_core::linalg::Q;
use strata_core::{AffineElement, CoinvariantGroup, FixedSubgroup, GammaSubgroup, RationalCoweight};

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 0..8)
}

fn pick(i: usize) -> &'static (&'static str, Setup) {
    let all = setups();
    &all[i % all.len()]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn length_is_inverse_invariant_and_changes_by_one(c in 0usize..8, o in 0usize..4, w in word()) {
        let (_, s) = pick(c);
        let g = &s.group;
        let x = element(s, o, &w);
        prop_assert_eq!(g.length(&x), g.length(&g.inverse(&x)));
        for r in g.simple_reflections() {
            let d = g.length(&g.multiply(r, &x)) as i64 - g.length(&x) as i64;
            prop_assert_eq!(d.abs(), 1);
            let d = g.length(&g.multiply(&x, r)) as i64 - g.length(&x) as i64;
            prop_assert_eq!(d.abs(), 1);
        }
    }

    #[test]
    fn kappa_is_constant_on_affine_cosets(c in 0usize..8, o in 0usize..4, w in word(), a in word()) {
        let (_, s) = pick(c);
        let g = &s.group;
        let x = element(s, o, &w);
        let ax = g.multiply(&element(s, 0, &a), &x);
        prop_assert_eq!(g.kappa(&ax), g.kappa(&x));
    }

    #[test]
    fn twist_preserves_length_and_acts(c in 0usize..8, o in 0usize..4, w in word(), h1 in word(), h2 in word()) {
        let (_, s) = pick(c);
        let g = &s.group;
        let tw = Twisted::new(g, &s.twist).unwrap();
        let x = element(s, o, &w);
        prop_assert_eq!(g.length(&tw.apply(&x)), g.length(&x));
        let (a, b) = (element(s, 1, &h1), element(s, 0, &h2));
        prop_assert_eq!(tw.conjugate(&a, &tw.conjugate(&b, &x)), tw.conjugate(&g.multiply(&a, &b), &x));
        prop_assert_eq!(s.twist.apply_power(g, &x, s.twist.order()), x);
    }

    #[test]
    fn twist_is_an_automorphism_of_omega(c in 0usize..8, a in 0usize..4, b in 0usize..4) {
        let (_, s) = pick(c);
        let g = &s.group;
        let om = g.omega_elements();
        let (x, y) = (om[a % om.len()], om[b % om.len()]);
        let t = &s.twist;
        prop_assert_eq!(t.apply(g, &g.multiply(&x, &y)), g.multiply(&t.apply(g, &x), &t.apply(g, &y)));
        prop_assert_eq!(g.length(&t.apply(g, &x)), 0);
    }

    #[test]
    fn dominant_representative_is_idempotent_and_orbit_constant(
        c in 0usize..8,
        v in prop::collection::vec((-12i64..12, 1i64..5), 2),
    ) {
        let (_, s) = pick(c);
        let d = &s.group.datum;
        let v = RationalCoweight::new(v.iter().take(d.rank()).map(|(n, m)| Q::new(*n, *m)).collect());
        let (dom, _) = d.dominant_representative(&v);
        prop_assert!(d.is_dominant(&dom));
        let (again, w) = d.dominant_representative(&dom);
        prop_assert_eq!(&again, &dom);
        prop_assert_eq!(d.weyl.length(w), 0);
        for u in d.weyl.elements() {
            prop_assert_eq!(&d.dominant_representative(&d.finite_weyl_act(u, &v)).0, &dom);
        }
    }

    #[test]
    fn straightness_agrees_with_direct_powers(c in 0usize..8, o in 0usize..4, w in prop::collection::vec(0usize..8, 0..6)) {
        let (_, s) = pick(c);
        let g = &s.group;
        let tw = Twisted::new(g, &s.twist).unwrap();
        let x = element(s, o, &w);
        let (n, _) = tw.newton_data(&x);
        let direct = (1..=4 * n).all(|k| g.length(&tw.product(&x, k)) == k as u32 * g.length(&x));
        prop_assert_eq!(tw.is_straight(&x), direct);
    }

    #[test]
    fn straightness_is_preserved_by_length_preserving_conjugation(
        c in 0usize..8, o in 0usize..4, w in prop::collection::vec(0usize..8, 0..6), h in word(),
    ) {
        let (_, s) = pick(c);
        let g = &s.group;
        let tw = Twisted::new(g, &s.twist).unwrap();
        let x = element(s, o, &w);
        prop_assume!(tw.is_straight(&x));
        let y = tw.conjugate(&element(s, 0, &h), &x);
        if g.length(&y) == g.length(&x) {
            prop_assert!(tw.is_straight(&y));
        }
    }

    #[test]
    fn descent_chain_is_valid(c in 0usize..8, o in 0usize..4, w in word()) {
        let (_, s) = pick(c);
        let g = &s.group;
        let tw = Twisted::new(g, &s.twist).unwrap();
        let x = element(s, o, &w);
        let (y, chain) = tw.descend_to_min(&x);
        let mut cur = x;
        for step in &chain {
            prop_assert_eq!(step.source, cur);
            prop_assert_eq!(tw.conjugate(&g.simple_reflections()[step.simple], &cur), step.target);
            let delta = g.length(&step.target) as i64 - g.length(&cur) as i64;
            prop_assert_eq!(delta, step.length_delta as i64);
            prop_assert!(delta <= 0);
            cur = step.target;
        }
        prop_assert_eq!(cur, y);
        prop_assert_eq!(tw.dominant_newton(&y), tw.dominant_newton(&x));
        let coinv = CoinvariantGroup::new(g, &s.twist, &GammaSubgroup::whole(g));
        prop_assert_eq!(coinv.project(&g.kappa(&y)), coinv.project(&g.kappa(&x)));
    }

    #[test]
    fn fixed_generators_are_fixed_involutions(c in 0usize..8) {
        let (_, s) = pick(c);
        let g = &s.group;
        let fs = FixedSubgroup::new(g, &s.twist).unwrap();
        for r in fs.generators() {
            prop_assert!(fs.is_fixed(r));
            prop_assert_eq!(g.multiply(r, r), AffineElement::IDENTITY);
            prop_assert_eq!(fs.len(r), 1);
        }
    }
}
