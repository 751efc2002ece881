//! Reduction moves, straightness, minimal length elements and straight classes.
//!
//! The algorithms only need a set of simple reflections, a length function and
//! the length-zero subgroup, so they run unchanged on the absolute group and on
//! the fixed-point subgroup of a twist.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::affine::{AffineElement, AffineWeylGroup};
use crate::invariants::{ClassInvariant, CoinvariantGroup};
use crate::linalg::Q;
use crate::root_data::RationalCoweight;
use crate::twist::{GammaSubgroup, Twist};
use crate::{Error, Result};

/// Largest finite parabolic subgroup we expect (`|W(F4)| = 1152`).
const PARABOLIC_CAP: usize = 1200;

pub trait Reflections {
    /// The ambient group used for multiplication.
    fn group(&self) -> &AffineWeylGroup;
    fn len(&self, x: &AffineElement) -> u32;
    fn simple(&self) -> &[AffineElement];
    fn length_zero(&self) -> &[AffineElement];
    /// Dominant representative of a Newton vector.
    fn dominant(&self, v: &[Q]) -> Vec<Q>;

    /// Elements of length `<= bound` by shells, each shell sorted.
    fn enumerate(&self, bound: u32, cap: usize) -> Result<Vec<Vec<AffineElement>>> {
        let g = self.group();
        let mut first: Vec<AffineElement> = self.length_zero().to_vec();
        first.sort();
        let mut total = first.len();
        let mut shells = vec![first];
        for k in 0..bound {
            let mut next = BTreeSet::new();
            for x in &shells[k as usize] {
                for s in self.simple() {
                    let y = g.mul(x, s);
                    if self.len(&y) == k + 1 {
                        next.insert(y);
                    }
                }
            }
            total += next.len();
            if total > cap {
                return Err(Error::ResourceCap(cap));
            }
            shells.push(next.into_iter().collect());
        }
        Ok(shells)
    }
}

impl Reflections for AffineWeylGroup {
    fn group(&self) -> &AffineWeylGroup {
        self
    }
    fn len(&self, x: &AffineElement) -> u32 {
        self.length(x)
    }
    fn simple(&self) -> &[AffineElement] {
        self.simple_reflections()
    }
    fn length_zero(&self) -> &[AffineElement] {
        self.omega_elements()
    }
    fn dominant(&self, v: &[Q]) -> Vec<Q> {
        self.datum.dominant_representative(&RationalCoweight::new(v.to_vec())).0.coords
    }
    fn enumerate(&self, bound: u32, cap: usize) -> Result<Vec<Vec<AffineElement>>> {
        self.enumerate_by_length(bound, cap)
    }
}

/// `target = s · source · theta(s)` with `length(target) <= length(source)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub source: AffineElement,
    pub simple: usize,
    pub target: AffineElement,
    pub length_delta: i32,
}

#[derive(Debug, Clone)]
pub struct MinDecomposition {
    /// Indices into the simple reflections.
    pub j: Vec<usize>,
    pub x: AffineElement,
    pub u: AffineElement,
    pub chain: Vec<ReductionStep>,
}

#[derive(Debug, Clone)]
pub struct StraightClassRecord {
    pub representative: AffineElement,
    pub invariant: ClassInvariant,
    pub elements: Vec<AffineElement>,
    pub component: usize,
}

/// Straight classes of a window together with everything that failed to
/// match between the invariant and the connectivity partition.
#[derive(Debug, Clone, Default)]
pub struct ClassPartition {
    pub records: Vec<StraightClassRecord>,
    pub elements_scanned: usize,
    pub straight_count: usize,
    pub counterexamples: Vec<String>,
}

/// A group with reflections together with a twist acting on it.
pub struct Twisted<'a, R: Reflections + ?Sized> {
    pub r: &'a R,
    pub theta: &'a Twist,
    theta_simple: Vec<usize>,
    finite_parabolics: Vec<u32>,
}

impl<'a, R: Reflections + ?Sized> Twisted<'a, R> {
    pub fn new(r: &'a R, theta: &'a Twist) -> Result<Self> {
        let g = r.group();
        let simple = r.simple();
        let theta_simple = simple
            .iter()
            .map(|s| {
                let img = theta.apply(g, s);
                simple.iter().position(|t| *t == img).ok_or_else(|| {
                    Error::NotApplicable("twist does not permute these simple reflections".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = simple.len();
        let finite_parabolics = (0u32..1 << n)
            .filter(|&mask| {
                let gens: Vec<AffineElement> =
                    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| simple[i]).collect();
                parabolic_elements(g, &gens, PARABOLIC_CAP).is_some()
            })
            .collect();
        Ok(Self { r, theta, theta_simple, finite_parabolics })
    }

    fn g(&self) -> &AffineWeylGroup {
        self.r.group()
    }

    pub fn apply(&self, x: &AffineElement) -> AffineElement {
        self.theta.apply(self.g(), x)
    }

    pub fn conjugate(&self, h: &AffineElement, x: &AffineElement) -> AffineElement {
        self.theta.twisted_conjugate(self.g(), h, x)
    }

    /// Index of `theta(s_i)` among the simple reflections.
    pub fn theta_on_simple(&self, i: usize) -> usize {
        self.theta_simple[i]
    }

    /// `x theta(x) ... theta^{k-1}(x)`.
    pub fn product(&self, x: &AffineElement, k: usize) -> AffineElement {
        let g = self.g();
        let mut acc = AffineElement::IDENTITY;
        let mut cur = *x;
        for _ in 0..k {
            acc = g.mul(&acc, &cur);
            cur = self.apply(&cur);
        }
        acc
    }

    /// Smallest `n` with `theta^n = 1` and the `n`-fold product a translation,
    /// together with that translation.
    pub fn newton_data(&self, x: &AffineElement) -> (usize, AffineElement) {
        let g = self.g();
        let ord = self.theta.order();
        let base = self.product(x, ord);
        let mut p = base;
        let cap = g.datum.weyl.order();
        for m in 1..=cap {
            if p.is_translation() {
                return (ord * m, p);
            }
            p = g.mul(&p, &base);
        }
        unreachable!("finite part of a power must become trivial within |W_0| steps")
    }

    pub fn newton_point(&self, x: &AffineElement) -> Vec<Q> {
        let (n, t) = self.newton_data(x);
        let r = self.g().rank();
        t.lambda[..r].iter().map(|&v| Q::new(v, n as i64)).collect()
    }

    /// Newton point computed from the `k`-fold product, which must be a
    /// translation.
    pub fn newton_point_at(&self, x: &AffineElement, k: usize) -> Option<Vec<Q>> {
        if !k.is_multiple_of(self.theta.order()) {
            return None;
        }
        let t = self.product(x, k);
        let r = self.g().rank();
        t.is_translation().then(|| t.lambda[..r].iter().map(|&v| Q::new(v, k as i64)).collect())
    }

    pub fn dominant_newton(&self, x: &AffineElement) -> Vec<Q> {
        self.r.dominant(&self.newton_point(x))
    }

    pub fn pi(&self, x: &AffineElement, coinv: &CoinvariantGroup) -> ClassInvariant {
        ClassInvariant {
            kottwitz: coinv.project(&self.g().kappa(x)),
            newton: self.dominant_newton(x),
        }
    }

    pub fn is_straight(&self, x: &AffineElement) -> bool {
        let l = self.r.len(x);
        if l == 0 {
            return true;
        }
        let (n, _) = self.newton_data(x);
        let g = self.g();
        let mut acc = AffineElement::IDENTITY;
        let mut cur = *x;
        for k in 1..=n {
            acc = g.mul(&acc, &cur);
            if self.r.len(&acc) != k as u32 * l {
                return false;
            }
            cur = self.apply(&cur);
        }
        true
    }

    fn step(&self, x: &AffineElement, i: usize) -> AffineElement {
        let g = self.g();
        let s = &self.r.simple()[i];
        let ts = &self.r.simple()[self.theta_simple[i]];
        g.mul(&g.mul(s, x), ts)
    }

    pub fn reduction_neighbors(&self, x: &AffineElement) -> Vec<ReductionStep> {
        let l = self.r.len(x) as i32;
        (0..self.r.simple().len())
            .filter_map(|i| {
                let y = self.step(x, i);
                let d = self.r.len(&y) as i32 - l;
                (d <= 0).then_some(ReductionStep { source: *x, simple: i, target: y, length_delta: d })
            })
            .collect()
    }

    /// Elements joined to `x` by length-preserving steps, with BFS parents.
    fn level_component(&self, x: &AffineElement) -> BTreeMap<AffineElement, Option<ReductionStep>> {
        let l = self.r.len(x);
        let mut seen = BTreeMap::from([(*x, None)]);
        let mut queue = VecDeque::from([*x]);
        while let Some(y) = queue.pop_front() {
            for i in 0..self.r.simple().len() {
                let z = self.step(&y, i);
                if self.r.len(&z) == l && !seen.contains_key(&z) {
                    seen.insert(z, Some(ReductionStep { source: y, simple: i, target: z, length_delta: 0 }));
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    fn path_to(
        tree: &BTreeMap<AffineElement, Option<ReductionStep>>,
        target: &AffineElement,
    ) -> Vec<ReductionStep> {
        let mut out = vec![];
        let mut cur = *target;
        while let Some(Some(step)) = tree.get(&cur) {
            out.push(step.clone());
            cur = step.source;
        }
        out.reverse();
        out
    }

    /// Reduce `x` to a minimal length element of its class. Returns the
    /// smallest normal form among the minimal elements reached and the chain
    /// of steps leading to it.
    pub fn descend_to_min(&self, x: &AffineElement) -> (AffineElement, Vec<ReductionStep>) {
        let mut chain = vec![];
        let mut cur = *x;
        loop {
            let comp = self.level_component(&cur);
            let l = self.r.len(&cur) as i32;
            let down = comp.keys().find_map(|y| {
                (0..self.r.simple().len()).find_map(|i| {
                    let z = self.step(y, i);
                    let d = self.r.len(&z) as i32 - l;
                    (d < 0).then_some(ReductionStep { source: *y, simple: i, target: z, length_delta: d })
                })
            });
            match down {
                Some(step) => {
                    chain.extend(Self::path_to(&comp, &step.source));
                    cur = step.target;
                    chain.push(step);
                }
                None => {
                    let best = *comp.keys().next().unwrap();
                    chain.extend(Self::path_to(&comp, &best));
                    return (best, chain);
                }
            }
        }
    }

    pub fn approx_connected(&self, x: &AffineElement, y: &AffineElement) -> Result<bool> {
        let (lx, ly) = (self.r.len(x), self.r.len(y));
        if lx != ly {
            return Err(Error::LengthMismatch(lx, ly));
        }
        Ok(self.level_component(x).contains_key(y))
    }

    /// Every element reachable from `x` by non-increasing steps, with parents.
    fn reachable(&self, x: &AffineElement) -> BTreeMap<AffineElement, Option<ReductionStep>> {
        let mut seen = BTreeMap::from([(*x, None)]);
        let mut queue = VecDeque::from([*x]);
        while let Some(y) = queue.pop_front() {
            for st in self.reduction_neighbors(&y) {
                if let Entry::Vacant(e) = seen.entry(st.target) {
                    queue.push_back(st.target);
                    e.insert(Some(st));
                }
            }
        }
        seen
    }

    fn mask_elements(&self, mask: u32) -> Vec<AffineElement> {
        (0..self.r.simple().len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.r.simple()[i])
            .collect()
    }

    /// Try to write `z = u x` with `u ∈ W_J` and `x` the minimal element of
    /// `W_J z`, satisfying the conditions of a minimal decomposition.
    fn split(&self, z: &AffineElement, mask: u32) -> Option<(AffineElement, AffineElement)> {
        let g = self.g();
        let js = self.mask_elements(mask);
        let mut x = *z;
        let mut u = AffineElement::IDENTITY;
        'outer: loop {
            for s in &js {
                let y = g.mul(s, &x);
                if self.r.len(&y) < self.r.len(&x) {
                    x = y;
                    u = g.mul(&u, s);
                    continue 'outer;
                }
            }
            break;
        }
        self.decomposition_ok(mask, &x).then_some((u, x))
    }

    fn decomposition_ok(&self, mask: u32, x: &AffineElement) -> bool {
        let g = self.g();
        let n = self.r.simple().len();
        let lx = self.r.len(x);
        let xinv = g.inverse(x);
        let theta_mask: u32 =
            (0..n).filter(|i| mask >> i & 1 == 1).map(|i| 1 << self.theta_simple[i]).sum();
        for i in 0..n {
            if mask >> i & 1 == 1 && self.r.len(&g.mul(&self.r.simple()[i], x)) < lx {
                return false;
            }
            if theta_mask >> i & 1 == 1 && self.r.len(&g.mul(x, &self.r.simple()[i])) < lx {
                return false;
            }
        }
        // x theta(J) x^{-1} = J
        for i in 0..n {
            if theta_mask >> i & 1 == 1 {
                let c = g.mul(&g.mul(x, &self.r.simple()[i]), &xinv);
                match self.r.simple().iter().position(|s| *s == c) {
                    Some(k) if mask >> k & 1 == 1 => {}
                    _ => return false,
                }
            }
        }
        self.is_straight(x)
    }

    pub fn min_decomposition(&self, w: &AffineElement) -> Result<MinDecomposition> {
        let reach = self.reachable(w);
        let min_len = reach.keys().map(|y| self.r.len(y)).min().unwrap();
        let mut masks = self.finite_parabolics.clone();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for z in reach.keys().filter(|y| self.r.len(y) == min_len) {
            for &mask in &masks {
                if let Some((u, x)) = self.split(z, mask) {
                    let j = (0..self.r.simple().len()).filter(|i| mask >> i & 1 == 1).collect();
                    return Ok(MinDecomposition { j, x, u, chain: Self::path_to(&reach, z) });
                }
            }
        }
        Err(Error::Internal(format!(
            "no minimal decomposition found for {}",
            self.g().format_element(w)
        )))
    }

    /// Independent check of every condition on a decomposition of `w`.
    pub fn validate_decomposition(&self, w: &AffineElement, d: &MinDecomposition) -> std::result::Result<(), String> {
        let g = self.g();
        let mut cur = *w;
        for st in &d.chain {
            if st.source != cur || st.target != self.step(&cur, st.simple) || st.length_delta > 0 {
                return Err("invalid reduction chain".into());
            }
            if self.r.len(&st.target) as i32 - self.r.len(&st.source) as i32 != st.length_delta {
                return Err("wrong length delta in chain".into());
            }
            cur = st.target;
        }
        if cur != g.mul(&d.u, &d.x) {
            return Err("chain does not end at u x".into());
        }
        let mask: u32 = d.j.iter().map(|i| 1 << i).sum();
        if !self.finite_parabolics.contains(&mask) {
            return Err("W_J is not finite".into());
        }
        let wj = parabolic_elements(g, &self.mask_elements(mask), PARABOLIC_CAP).unwrap();
        if !wj.contains(&d.u) {
            return Err("u is not in W_J".into());
        }
        if !self.decomposition_ok(mask, &d.x) {
            return Err("x fails the double coset, normalizing or straightness condition".into());
        }
        let (m, _) = self.descend_to_min(&cur);
        if self.r.len(&m) != self.r.len(&cur) {
            return Err("u x is not of minimal length".into());
        }
        Ok(())
    }

    /// Partition the straight elements of length `<= bound` into classes
    /// for the twisted action of `W_a ⋊ Gamma`. The invariant decides the
    /// partition; connectivity under length-preserving steps and
    /// `Gamma`-translation is computed independently and compared.
    pub fn straight_classes(
        &self,
        bound: u32,
        gamma: &GammaSubgroup,
        coinv: &CoinvariantGroup,
        cap: usize,
    ) -> Result<ClassPartition> {
        let g = self.g();
        let shells = self.r.enumerate(bound, cap)?;
        let all: Vec<AffineElement> = shells.into_iter().flatten().collect();
        let straight: Vec<AffineElement> = all.iter().copied().filter(|x| self.is_straight(x)).collect();
        let index: BTreeMap<AffineElement, usize> =
            straight.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let gamma_reps = gamma.representatives(g);
        let mut uf = UnionFind::new(straight.len());
        let mut bad = vec![];
        for (i, x) in straight.iter().enumerate() {
            let lx = self.r.len(x);
            let mut moves: Vec<AffineElement> = (0..self.r.simple().len())
                .map(|k| self.step(x, k))
                .filter(|y| self.r.len(y) == lx)
                .collect();
            moves.extend(gamma_reps.iter().map(|t| self.conjugate(t, x)));
            for y in moves {
                match index.get(&y) {
                    Some(&j) => uf.union(i, j),
                    None => bad.push(format!(
                        "{} is a length-preserving conjugate of straight {} but not straight",
                        g.format_element(&y),
                        g.format_element(x)
                    )),
                }
            }
        }
        let invariants: Vec<ClassInvariant> = straight.iter().map(|x| self.pi(x, coinv)).collect();
        let mut by_inv: BTreeMap<ClassInvariant, Vec<usize>> = BTreeMap::new();
        for (i, inv) in invariants.iter().enumerate() {
            by_inv.entry(inv.clone()).or_default().push(i);
        }
        let mut comp_inv: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, _) in straight.iter().enumerate() {
            let root = uf.find(i);
            match comp_inv.get(&root) {
                None => {
                    comp_inv.insert(root, i);
                }
                Some(&j) if invariants[j] != invariants[i] => bad.push(format!(
                    "{} and {} are conjugate but have different invariants",
                    g.format_element(&straight[j]),
                    g.format_element(&straight[i])
                )),
                _ => {}
            }
        }
        let mut comp_ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut records = vec![];
        for (inv, members) in by_inv {
            let root = uf.find(members[0]);
            for &m in &members[1..] {
                if uf.find(m) != root {
                    bad.push(format!(
                        "{} and {} share an invariant but are not connected",
                        g.format_element(&straight[members[0]]),
                        g.format_element(&straight[m])
                    ));
                }
            }
            let next = comp_ids.len();
            let component = *comp_ids.entry(root).or_insert(next);
            let elements: Vec<AffineElement> = members.iter().map(|&m| straight[m]).collect();
            records.push(StraightClassRecord {
                representative: elements[0],
                invariant: inv,
                elements,
                component,
            });
        }
        bad.sort();
        bad.dedup();
        Ok(ClassPartition {
            records,
            elements_scanned: all.len(),
            straight_count: straight.len(),
            counterexamples: bad,
        })
    }
}

/// Elements of the subgroup generated by `gens`, or `None` if it has more
/// than `cap` elements.
pub fn parabolic_elements(
    g: &AffineWeylGroup,
    gens: &[AffineElement],
    cap: usize,
) -> Option<BTreeSet<AffineElement>> {
    let mut seen = BTreeSet::from([AffineElement::IDENTITY]);
    let mut queue = VecDeque::from([AffineElement::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.mul(&x, s);
            if seen.insert(y) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
