//! Kottwitz and Newton invariants and the window verifiers built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::affine::{AffineElement, AffineWeylGroup, OmegaElement};
use crate::conjugacy::{ClassPartition, Reflections, Twisted};
use crate::linalg::{fmt_qvec, smith_normal_form, Q};
use crate::report::VerificationReport;
use crate::twist::{GammaSubgroup, Twist};
use crate::{Error, Result};

/// `Omega / (1 - theta) Gamma` with canonical coordinates from a Smith normal
/// form of the relation matrix.
#[derive(Debug, Clone)]
pub struct CoinvariantGroup {
    factors: Vec<i64>,
    /// Columns of the right transform that survive (invariant factor > 1).
    transform: Vec<Vec<i64>>,
}

impl CoinvariantGroup {
    pub fn new(group: &AffineWeylGroup, theta: &Twist, gamma: &GammaSubgroup) -> Self {
        let d = group.omega_factors();
        let k = d.len();
        let mut rel: Vec<Vec<i64>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        for gen in &gamma.generators {
            let img = theta.apply_omega(group, gen);
            rel.push(gen.coords.iter().zip(&img.coords).map(|(a, b)| a - b).collect());
        }
        if k == 0 {
            return Self { factors: vec![], transform: vec![] };
        }
        let snf = smith_normal_form(&rel);
        let keep: Vec<usize> = (0..k).filter(|&i| snf.diag[i] != 1).collect();
        Self {
            factors: keep.iter().map(|&i| snf.diag[i]).collect(),
            transform: keep.iter().map(|&i| (0..k).map(|r| snf.right[r][i]).collect()).collect(),
        }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }

    pub fn project(&self, o: &OmegaElement) -> Vec<i64> {
        self.transform
            .iter()
            .zip(&self.factors)
            .map(|(col, d)| col.iter().zip(&o.coords).map(|(a, b)| a * b).sum::<i64>().rem_euclid(*d))
            .collect()
    }
}

/// Value of `pi_{theta, Gamma}`: Kottwitz coordinates and dominant Newton point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassInvariant {
    pub kottwitz: Vec<i64>,
    pub newton: Vec<Q>,
}

impl fmt::Display for ClassInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.kottwitz.iter().map(|c| c.to_string()).collect();
        write!(f, "([{}], {})", k.join(","), fmt_qvec(&self.newton))
    }
}

pub fn newton_point(group: &AffineWeylGroup, theta: &Twist, x: &AffineElement) -> Vec<Q> {
    Twisted::new(group, theta).expect("absolute twist").newton_point(x)
}

pub fn dominant_newton(group: &AffineWeylGroup, theta: &Twist, x: &AffineElement) -> Vec<Q> {
    Twisted::new(group, theta).expect("absolute twist").dominant_newton(x)
}

pub fn kottwitz(group: &AffineWeylGroup, coinv: &CoinvariantGroup, x: &AffineElement) -> Vec<i64> {
    coinv.project(&group.kappa(x))
}

pub fn pi(group: &AffineWeylGroup, theta: &Twist, gamma: &GammaSubgroup, x: &AffineElement) -> ClassInvariant {
    let coinv = CoinvariantGroup::new(group, theta, gamma);
    Twisted::new(group, theta).expect("absolute twist").pi(x, &coinv)
}

fn theorem_id(group: &AffineWeylGroup, gamma: &GammaSubgroup) -> &'static str {
    if gamma.elements().len() == group.omega_order() {
        "gamma"
    } else if gamma.elements().len() == 1 {
        "partial"
    } else {
        "Gamma"
    }
}

/// Straight classes for `W_a ⋊ Gamma`, after checking that `Gamma` is stable.
pub fn straight_classes_in_window<R: Reflections + ?Sized>(
    tw: &Twisted<R>,
    bound: u32,
    gamma: &GammaSubgroup,
    cap: usize,
) -> Result<(ClassPartition, CoinvariantGroup)> {
    let g = tw.r.group();
    gamma.require_stable(g, tw.theta)?;
    let coinv = CoinvariantGroup::new(g, tw.theta, gamma);
    Ok((tw.straight_classes(bound, gamma, &coinv, cap)?, coinv))
}

/// Check that `pi_{theta, Gamma}` separates the straight classes of the window
/// and that every value it takes on the window is taken by a straight element.
pub fn verify_classification(
    group: &AffineWeylGroup,
    theta: &Twist,
    gamma: &GammaSubgroup,
    bound: u32,
    cap: usize,
) -> Result<VerificationReport> {
    let tw = Twisted::new(group, theta)?;
    let (part, coinv) = straight_classes_in_window(&tw, bound, gamma, cap)?;
    let mut rep = VerificationReport::new(theorem_id(group, gamma), bound);
    rep.classes = part.records.len();
    rep.elements = part.elements_scanned;
    for c in &part.counterexamples {
        rep.fail(c.clone());
    }
    let attained: BTreeSet<&ClassInvariant> = part.records.iter().map(|r| &r.invariant).collect();
    for x in group.enumerate_by_length(bound, cap)?.iter().flatten() {
        let inv = tw.pi(x, &coinv);
        if !attained.contains(&inv) {
            rep.fail(format!(
                "invariant {} of {} is not attained by a straight element",
                inv,
                group.format_element(x)
            ));
        }
    }
    rep.detail("gamma", gamma.describe());
    rep.detail("gamma_order", gamma.elements().len());
    rep.detail("coinvariant_factors", coinv.factors().to_vec());
    rep.detail("straight_elements", part.straight_count);
    Ok(rep.finish())
}

/// The projection from straight `W_a`-orbits to straight classes is a
/// bijection when the twist fixes `Omega` pointwise.
pub fn verify_projection_bijection(
    group: &AffineWeylGroup,
    theta: &Twist,
    bound: u32,
    cap: usize,
) -> Result<VerificationReport> {
    if !theta.acts_trivially_on_omega(group) {
        return Err(Error::NotApplicable("the twist acts nontrivially on Omega".into()));
    }
    let tw = Twisted::new(group, theta)?;
    let (orbits, _) = straight_classes_in_window(&tw, bound, &GammaSubgroup::trivial(group), cap)?;
    let (classes, _) = straight_classes_in_window(&tw, bound, &GammaSubgroup::whole(group), cap)?;
    let mut rep = VerificationReport::new("bij", bound);
    rep.classes = classes.records.len();
    rep.elements = classes.elements_scanned;
    for c in orbits.counterexamples.iter().chain(&classes.counterexamples) {
        rep.fail(c.clone());
    }
    let class_of: BTreeMap<AffineElement, usize> = classes
        .records
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.elements.iter().map(move |x| (*x, i)))
        .collect();
    let mut hit = vec![0usize; classes.records.len()];
    for o in &orbits.records {
        let targets: BTreeSet<usize> = o.elements.iter().map(|x| class_of[x]).collect();
        if targets.len() != 1 {
            rep.fail(format!("orbit of {} meets several classes", group.format_element(&o.representative)));
        }
        for t in targets {
            hit[t] += 1;
        }
    }
    for (i, h) in hit.iter().enumerate() {
        if *h != 1 {
            rep.fail(format!(
                "class of {} is the image of {} orbits",
                group.format_element(&classes.records[i].representative),
                h
            ));
        }
    }
    rep.detail("orbits", orbits.records.len());
    rep.detail("classes", classes.records.len());
    Ok(rep.finish())
}

/// Every element of the window admits a validated minimal decomposition.
pub fn verify_min_decomposition(
    group: &AffineWeylGroup,
    theta: &Twist,
    bound: u32,
    cap: usize,
) -> Result<VerificationReport> {
    let tw = Twisted::new(group, theta)?;
    let mut rep = VerificationReport::new("min1", bound);
    for w in group.enumerate_by_length(bound, cap)?.iter().flatten() {
        rep.elements += 1;
        match tw.min_decomposition(w) {
            Ok(d) => {
                if let Err(e) = tw.validate_decomposition(w, &d) {
                    rep.fail(format!("{}: {}", group.format_element(w), e));
                }
            }
            Err(e) => rep.fail(e.to_string()),
        }
    }
    Ok(rep.finish())
}

/// Straight elements in the same `W_a`-orbit are joined by length-preserving
/// steps.
pub fn verify_straight_connectivity(
    group: &AffineWeylGroup,
    theta: &Twist,
    bound: u32,
    cap: usize,
) -> Result<VerificationReport> {
    let tw = Twisted::new(group, theta)?;
    let (orbits, _) = straight_classes_in_window(&tw, bound, &GammaSubgroup::trivial(group), cap)?;
    let mut rep = VerificationReport::new("min2", bound);
    rep.classes = orbits.records.len();
    rep.elements = orbits.elements_scanned;
    let mut pairs = 0usize;
    for rec in &orbits.records {
        for y in &rec.elements {
            pairs += 1;
            if !tw.approx_connected(&rec.representative, y)? {
                rep.fail(format!(
                    "{} and {} have equal invariants but are not connected",
                    group.format_element(&rec.representative),
                    group.format_element(y)
                ));
            }
        }
    }
    rep.detail("pairs_checked", pairs);
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::root_data::{LatticeChoice, RootDatum};

    fn group(label: &str, lat: LatticeChoice) -> AffineWeylGroup {
        AffineWeylGroup::new(RootDatum::build(label, &lat).unwrap()).unwrap()
    }

    #[test]
    fn coinvariants_of_swap() {
        let g = group("A1xA1", LatticeChoice::adjoint());
        let t = Twist::build(&g, &[1, 0], &[0, 0]).unwrap();
        let whole = CoinvariantGroup::new(&g, &t, &GammaSubgroup::whole(&g));
        assert_eq!(whole.order(), 2);
        assert_eq!(whole.project(&g.omega_normalize(&[1, 1])), whole.project(&g.omega_normalize(&[0, 0])));
        let triv = CoinvariantGroup::new(&g, &t, &GammaSubgroup::trivial(&g));
        assert_eq!(triv.order(), 4);
    }

    #[test]
    fn newton_examples() {
        let g = group("A1", LatticeChoice::adjoint());
        let id = Twist::identity(&g);
        assert_eq!(dominant_newton(&g, &id, &AffineElement::translation(&[-2])), vec![q(2)]);
        let om = g.omega_elements()[1];
        assert_eq!(dominant_newton(&g, &id, &om), vec![q(0)]);
        assert_eq!(newton_point(&g, &id, &g.simple_reflections()[0]), vec![q(0)]);
    }
}
