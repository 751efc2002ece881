//! Named configurations and the reproductions of the worked examples.

use std::fmt::Write as _;

use crate::affine::AffineElement;
use crate::config::{GammaSpec, RunConfig, TwistSpec};
use crate::conjugacy::Twisted;
use crate::fixed::{FixedApartment, FixedSubgroup};
use crate::invariants::pi;
use crate::linalg::{fmt_qvec, q, solve_affine, QMatrix, Q};
use crate::root_data::LatticeChoice;
use crate::twist::GammaSubgroup;
use crate::Result;

fn config(ty: &str, lattice: LatticeChoice, perm: &[usize], omega: &[i64], bound: u32) -> RunConfig {
    RunConfig {
        cartan_type: ty.into(),
        lattice,
        twist: Some(TwistSpec { diagram_perm: perm.to_vec(), omega: omega.to_vec() }),
        gamma: None,
        length_bound: bound,
        format: None,
        max_elements: None,
    }
}

/// The standard configurations, in a fixed order.
pub fn catalog() -> Vec<(&'static str, RunConfig)> {
    use LatticeChoice as L;
    vec![
        ("a1_sc", config("A1", L::simply_connected(), &[0], &[], 6)),
        ("a1_ad", config("A1", L::adjoint(), &[0], &[0], 6)),
        ("a1xa1_swap", config("A1xA1", L::adjoint(), &[1, 0], &[0, 0], 6)),
        ("a2_id", config("A2", L::adjoint(), &[0, 1], &[0], 6)),
        // the twist fixes s1 and exchanges s0 and s2
        ("a2_swap", config("A2", L::adjoint(), &[1, 0], &[2], 6)),
        ("b2_id", config("B2", L::adjoint(), &[0, 1], &[0], 6)),
        // conjugation by the nontrivial length-zero element
        ("b2_swap", config("B2", L::adjoint(), &[0, 1], &[1], 6)),
        ("g2_id", config("G2", L::adjoint(), &[0, 1], &[], 4)),
    ]
}

pub fn catalog_config(name: &str) -> Option<RunConfig> {
    catalog().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

/// The three reproductions, in order: `A2-swap`, `B2-swap`, `resSL2`.
pub fn worked_examples() -> Result<Vec<(&'static str, String)>> {
    let a2 = fixed_example(
        "A2-swap",
        &catalog_config("a2_swap").unwrap(),
        "(1/3) alpha_2^vee + Q alpha_1^vee",
        &[q(0), Q::new(1, 3)],
        &[vec![q(1), q(0)]],
    )?;
    let b2 = fixed_example(
        "B2-swap",
        &catalog_config("b2_swap").unwrap(),
        "(1/4)(alpha^vee + beta^vee) + Q alpha^vee",
        &[Q::new(1, 4), Q::new(1, 4)],
        &[vec![q(1), q(0)]],
    )?;
    Ok(vec![("A2-swap", a2), ("B2-swap", b2), ("resSL2", restriction_example()?)])
}

/// Whether the fixed subspace equals `offset + span(dirs)` (simple coroot
/// coordinates).
pub fn subspace_equals(fa: &FixedApartment, offset: &[Q], dirs: &[Vec<Q>]) -> bool {
    if dirs.len() != fa.directions_coroot.len() {
        return false;
    }
    let n = offset.len();
    let span = |basis: &[Vec<Q>], v: &[Q]| {
        let cols: QMatrix = (0..n).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
        basis.is_empty() && v.iter().all(|x| *x == q(0)) || !basis.is_empty() && solve_affine(&cols, v).is_some()
    };
    let diff: Vec<Q> = offset.iter().zip(&fa.offset_coroot).map(|(a, b)| *a - *b).collect();
    dirs.iter().all(|d| span(&fa.directions_coroot, d)) && span(&fa.directions_coroot, &diff)
}

fn fixed_example(name: &str, cfg: &RunConfig, stated: &str, offset: &[Q], dirs: &[Vec<Q>]) -> Result<String> {
    let setup = cfg.build()?;
    let g = &setup.group;
    let fs = FixedSubgroup::new(g, &setup.twist)?;
    let names = simple_names(g);
    let mut out = String::new();
    writeln!(out, "example: {name}").unwrap();
    writeln!(out, "type: {} ({})", cfg.cartan_type, lattice_name(&cfg.lattice)).unwrap();
    let perm = setup.twist.simple_permutation();
    let images: Vec<String> =
        (0..perm.len()).map(|i| format!("{} -> {}", names[i], names[perm[i]])).collect();
    writeln!(out, "sigma on simple reflections: {}", images.join(", ")).unwrap();
    writeln!(out, "fixed subspace (simple coroot coordinates): {}", fs.apartment.describe()).unwrap();
    writeln!(out, "stated subspace: {stated}").unwrap();
    let matches = subspace_equals(&fs.apartment, offset, dirs);
    writeln!(out, "stated subspace matches: {}", if matches { "yes" } else { "no" }).unwrap();
    let e = g.datum.to_coroot_coords(&fs.apartment.base_point);
    writeln!(out, "special vertex e: {}", fmt_qvec(&e)).unwrap();
    for (gen, orbit) in fs.generators().iter().zip(&fs.generator_orbits) {
        let orb: Vec<&str> = orbit.iter().map(|&j| names[j].as_str()).collect();
        writeln!(out, "relative generator for {{{}}}: {}", orb.join(", "), g.format_element(gen)).unwrap();
    }
    writeln!(out, "relative Omega order: {}", fs.relative_omega().len()).unwrap();
    if let Some((rel, abs)) = dominant_rays(&fs) {
        writeln!(out, "relative dominant ray: e + t{}", fmt_qvec(&g.datum.to_coroot_coords(&rel))).unwrap();
        writeln!(out, "absolute dominant image of the shifted ray: t{}", fmt_qvec(&g.datum.to_coroot_coords(&abs)))
            .unwrap();
    }
    Ok(out)
}

/// For a one-dimensional fixed subspace: the relatively dominant direction
/// and the absolutely dominant representative of it (coweight coordinates).
pub fn dominant_rays(fs: &FixedSubgroup) -> Option<(Vec<Q>, Vec<Q>)> {
    if fs.apartment.dimension() != 1 {
        return None;
    }
    let k = &fs.apartment.directions[0];
    let rel = if fs.relative_dominant(k) == *k { k.clone() } else { k.iter().map(|x| -*x).collect() };
    let abs = crate::conjugacy::Reflections::dominant(fs.absolute(), &rel);
    Some((rel, abs))
}

fn restriction_example() -> Result<String> {
    let setup = catalog_config("a1xa1_swap").unwrap().build()?;
    let g = &setup.group;
    let sigma = &setup.twist;
    let tw = Twisted::new(g, sigma)?;
    let one = AffineElement::IDENTITY;
    let om = g.omega_from_coords(&[1, 1])?;
    let whole = GammaSubgroup::whole(g);
    let triv = GammaSubgroup::trivial(g);
    let (p1, p2) = (pi(g, sigma, &whole, &one), pi(g, sigma, &whole, &om));
    let (f1, f2) = (pi(g, sigma, &triv, &one), pi(g, sigma, &triv, &om));
    let witness = g
        .omega_elements()
        .iter()
        .find(|h| tw.conjugate(h, &one) == om)
        .copied();
    let connected = tw.approx_connected(&one, &om)?;
    let mut out = String::new();
    writeln!(out, "example: resSL2").unwrap();
    writeln!(out, "type: A1xA1 (adjoint lattice in each factor), sigma exchanges the factors").unwrap();
    writeln!(out, "elements: (1,1) = {}, (omega,omega) = {}", g.format_element(&one), g.format_element(&om)).unwrap();
    writeln!(out, "invariant with Gamma = Omega: {p1} and {p2}").unwrap();
    writeln!(out, "invariant with Gamma = 1: {f1} and {f2}").unwrap();
    match witness {
        Some(h) => writeln!(out, "sigma-conjugating element: {}", g.format_element(&h)).unwrap(),
        None => writeln!(out, "sigma-conjugating element: none of length zero").unwrap(),
    }
    writeln!(out, "joined by length-preserving steps: {}", if connected { "yes" } else { "no" }).unwrap();
    let (whole_classes, _) = setup.straight_classes(0)?;
    let mut triv_setup = setup.clone();
    triv_setup.gamma = Some(triv.clone());
    let (triv_classes, _) = triv_setup.straight_classes(0)?;
    writeln!(out, "length-zero straight classes: {} for Gamma = Omega, {} for Gamma = 1",
        whole_classes.records.len(), triv_classes.records.len()).unwrap();
    let separated = p1 == p2 && f1 != f2 && witness.is_some() && !connected;
    writeln!(
        out,
        "verdict: same sigma-conjugacy class, different W_a-sigma-conjugacy classes: {}",
        if separated { "yes" } else { "no" }
    )
    .unwrap();
    Ok(out)
}

pub fn simple_names(g: &crate::affine::AffineWeylGroup) -> Vec<String> {
    let ncomp = g.datum.components.len();
    g.simple_kind()
        .iter()
        .map(|(c, fin)| match fin {
            Some(i) => format!("s{}", i + 1),
            None if ncomp == 1 => "s0".to_string(),
            None => format!("s0'{}", c + 1),
        })
        .collect()
}

fn lattice_name(l: &LatticeChoice) -> String {
    match l {
        LatticeChoice::Named(n) => serde_json::to_value(n).unwrap().as_str().unwrap().to_string(),
        LatticeChoice::Basis { basis } => format!("basis {basis:?}"),
    }
}

/// Configuration for the restriction-of-scalars example with an explicit
/// subgroup, used by tests and the command line.
pub fn with_gamma(mut cfg: RunConfig, generators: Vec<Vec<i64>>) -> RunConfig {
    cfg.gamma = Some(GammaSpec { generators });
    cfg
}

/// Whether the catalog twist of `a2_swap` fixes `s1` and exchanges `s0`, `s2`.
pub fn a2_swap_labelling_ok() -> bool {
    let s = catalog_config("a2_swap").unwrap().build().unwrap();
    s.twist.simple_permutation() == [0, 2, 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds() {
        for (name, cfg) in catalog() {
            let s = cfg.build().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(s.twist.order() <= 2, "{name}");
        }
        assert!(a2_swap_labelling_ok());
    }

    #[test]
    fn examples_render() {
        let ex = worked_examples().unwrap();
        assert_eq!(ex.len(), 3);
        assert!(ex[0].1.contains("stated subspace matches: yes"));
        assert!(ex[2].1.contains("verdict: same sigma-conjugacy class, different W_a-sigma-conjugacy classes: yes"));
    }
}
