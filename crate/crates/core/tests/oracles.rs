//! Independent reference computations checked against the library.

mod common;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{affine_poincare, element, setup, setups};
use strata_core::conjugacy::Twisted;
use strata_core::fixed::alcove_vertices;
use strata_core::linalg::Q;
use strata_core::{AffineElement, AffineWeylGroup};

const BOUND: u32 = 6;

/// Word length by breadth-first search over right multiplication by simple
/// reflections, starting from the length-zero elements.
fn bfs_lengths(g: &AffineWeylGroup, bound: u32) -> BTreeMap<AffineElement, u32> {
    let mut dist: BTreeMap<AffineElement, u32> = g.omega_elements().iter().map(|o| (*o, 0)).collect();
    let mut frontier: Vec<AffineElement> = g.omega_elements().to_vec();
    for d in 1..=bound {
        let mut next = vec![];
        for x in &frontier {
            for s in g.simple_reflections() {
                let y = g.multiply(x, s);
                if let Entry::Vacant(e) = dist.entry(y) {
                    e.insert(d);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    dist
}

fn barycenter(g: &AffineWeylGroup) -> Vec<Q> {
    let verts = alcove_vertices(g);
    let n = Q::from_integer(verts.len() as i64);
    (0..g.rank()).map(|i| verts.iter().map(|v| v[i]).sum::<Q>() / n).collect()
}

/// Number of affine root hyperplanes separating the base alcove from its
/// image.
fn separating_hyperplanes(g: &AffineWeylGroup, b: &[Q], x: &AffineElement) -> u32 {
    let xb = g.act_point(x, b);
    let pair = |v: &[Q], root: &[i64]| v.iter().zip(root).map(|(a, r)| *a * Q::from_integer(*r)).sum::<Q>();
    g.datum
        .positive_roots
        .iter()
        .map(|rt| {
            let (p, q) = (pair(b, &rt.root), pair(&xb, &rt.root));
            assert!(!p.is_integer() && !q.is_integer());
            (p.floor() - q.floor()).to_integer().unsigned_abs() as u32
        })
        .sum()
}

#[test]
fn closed_form_length_matches_word_length_and_hyperplane_count() {
    for (name, s) in setups() {
        let g = &s.group;
        let b = barycenter(g);
        let dist = bfs_lengths(g, BOUND);
        for (x, d) in &dist {
            assert_eq!(g.length(x), *d, "{name}: {}", g.format_element(x));
            assert_eq!(separating_hyperplanes(g, &b, x), *d, "{name}: {}", g.format_element(x));
        }
        let window: BTreeSet<AffineElement> =
            g.enumerate_by_length(BOUND, usize::MAX).unwrap().into_iter().flatten().collect();
        assert_eq!(window, dist.keys().copied().collect(), "{name}");
    }
}

#[test]
fn window_sizes_follow_the_poincare_series() {
    for (name, s) in setups() {
        let g = &s.group;
        let label = g.datum.cartan_type.to_string();
        let expected: Vec<u64> =
            affine_poincare(&label, BOUND as usize).iter().map(|c| c * g.omega_order() as u64).collect();
        let got: Vec<u64> = g.enumerate_by_length(BOUND, usize::MAX).unwrap().iter().map(|l| l.len() as u64).collect();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn frozen_poincare_coefficients() {
    assert_eq!(affine_poincare("A1", 4), vec![1, 2, 2, 2, 2]);
    assert_eq!(affine_poincare("A2", 4), vec![1, 3, 6, 9, 12]);
    assert_eq!(affine_poincare("B2", 4), vec![1, 3, 5, 8, 11]);
    assert_eq!(affine_poincare("G2", 4), vec![1, 3, 5, 7, 9]);
}

#[test]
fn product_is_composition_of_affine_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, s) in setups() {
        let g = &s.group;
        let window: Vec<AffineElement> = g.enumerate_by_length(4, usize::MAX).unwrap().into_iter().flatten().collect();
        for _ in 0..300 {
            let x = window[rng.gen_range(0..window.len())];
            let y = window[rng.gen_range(0..window.len())];
            let p: Vec<Q> = (0..g.rank()).map(|_| Q::new(rng.gen_range(-20..20), rng.gen_range(1..7))).collect();
            let xy = g.multiply(&x, &y);
            assert_eq!(g.act_point(&xy, &p), g.act_point(&x, &g.act_point(&y, &p)), "{name}");
            let inv = g.inverse(&x);
            assert_eq!(g.multiply(&x, &inv), AffineElement::IDENTITY, "{name}");
        }
    }
}

#[test]
fn newton_point_does_not_depend_on_the_power() {
    for (name, s) in setups() {
        let g = &s.group;
        let tw = Twisted::new(g, &s.twist).unwrap();
        for x in g.enumerate_by_length(4, usize::MAX).unwrap().iter().flatten() {
            let (n, _) = tw.newton_data(x);
            let at: Vec<Vec<Q>> = [n, 2 * n, 3 * n].iter().map(|k| tw.newton_point_at(x, *k).unwrap()).collect();
            assert_eq!(at[0], at[1], "{name}: {}", g.format_element(x));
            assert_eq!(at[0], at[2], "{name}: {}", g.format_element(x));
            assert_eq!(at[0], tw.newton_point(x));
        }
    }
}

#[test]
fn dominant_newton_survives_random_twisted_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (name, s) in setups() {
        let g = &s.group;
        let tw = Twisted::new(g, &s.twist).unwrap();
        let nsimple = g.simple_reflections().len();
        for _ in 0..1000 {
            let wx: Vec<usize> = (0..rng.gen_range(0..7)).map(|_| rng.gen_range(0..nsimple)).collect();
            let wh: Vec<usize> = (0..rng.gen_range(0..9)).map(|_| rng.gen_range(0..nsimple)).collect();
            let x = element(s, rng.gen_range(0..g.omega_order()), &wx);
            let h = element(s, rng.gen_range(0..g.omega_order()), &wh);
            let y = tw.conjugate(&h, &x);
            assert_eq!(tw.dominant_newton(&x), tw.dominant_newton(&y), "{name}");
        }
    }
}

/// Minimal length over the twisted class of `x` restricted to a length window,
/// found by conjugating with simple reflections without any length condition.
fn class_minimum_in_window(tw: &Twisted<AffineWeylGroup>, x: &AffineElement, slack: u32) -> u32 {
    let g = tw.r;
    let cap = g.length(x) + slack;
    let mut seen = BTreeSet::from([*x]);
    let mut stack = vec![*x];
    while let Some(y) = stack.pop() {
        for h in g.simple_reflections().iter().chain(g.omega_elements()) {
            let z = tw.conjugate(h, &y);
            if g.length(&z) <= cap && seen.insert(z) {
                stack.push(z);
            }
        }
    }
    seen.iter().map(|y| g.length(y)).min().unwrap()
}

#[test]
fn descent_reaches_the_class_minimum() {
    for name in ["a1_ad", "a1xa1_swap", "a2_id", "a2_swap", "b2_swap"] {
        let s = setup(name);
        let g = &s.group;
        let tw = Twisted::new(g, &s.twist).unwrap();
        for x in g.enumerate_by_length(4, usize::MAX).unwrap().iter().flatten() {
            let (y, chain) = tw.descend_to_min(x);
            let oracle = class_minimum_in_window(&tw, x, 2);
            assert_eq!(g.length(&y), oracle, "{name}: {}", g.format_element(x));
            let mut cur = *x;
            for step in &chain {
                assert_eq!(step.source, cur);
                assert!(step.length_delta <= 0);
                cur = step.target;
            }
            assert_eq!(cur, y);
        }
    }
}

#[test]
fn coinvariant_order_matches_direct_quotient() {
    use strata_core::invariants::CoinvariantGroup;
    use strata_core::GammaSubgroup;
    for (name, s) in setups() {
        let g = &s.group;
        let whole = GammaSubgroup::whole(g);
        let coinv = CoinvariantGroup::new(g, &s.twist, &whole);
        // image of 1 - theta on Omega, computed by enumeration
        let image: BTreeSet<Vec<i64>> = g
            .omega_elements()
            .iter()
            .map(|o| {
                let th = s.twist.apply(g, o);
                g.kappa(&g.multiply(o, &g.inverse(&th))).coords
            })
            .collect();
        assert_eq!(coinv.order() as usize * image.len(), g.omega_order(), "{name}");
    }
}
