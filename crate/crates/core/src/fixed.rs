//! The subgroup of elements fixed by a twist `sigma`, its action on the fixed
//! part of the apartment, and the comparison with the absolute group.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::affine::{AffineElement, AffineWeylGroup};
use crate::conjugacy::{parabolic_elements, Reflections, Twisted};
use crate::invariants::{straight_classes_in_window, ClassInvariant, CoinvariantGroup};
use crate::linalg::{fmt_qvec, q, solve_affine, to_q, QMatrix, Q};
use crate::report::VerificationReport;
use crate::root_data::{FiniteWeylElement, RationalCoweight};
use crate::twist::{GammaSubgroup, Twist};
use crate::{Error, Result};

/// `v -> A v + b` on the apartment, in coweight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineAction {
    pub linear: QMatrix,
    pub translation: Vec<Q>,
}

impl AffineAction {
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.linear
            .iter()
            .zip(&self.translation)
            .map(|(row, b)| row.iter().zip(v).fold(*b, |acc, (a, x)| acc + *a * *x))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|x| x.is_zero())
            && self
                .linear
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == if i == j { Q::one() } else { Q::zero() }))
    }
}

/// Fixed affine subspace `e + V` of an affine action.
#[derive(Debug, Clone)]
pub struct FixedApartment {
    /// Special vertex of the relative arrangement, coweight coordinates.
    pub base_point: Vec<Q>,
    /// Canonical point of the subspace in simple coroot coordinates (zero
    /// free coordinates).
    pub offset_coroot: Vec<Q>,
    /// Reduced echelon basis of `V` in simple coroot coordinates.
    pub directions_coroot: Vec<Vec<Q>>,
    /// The same basis in coweight coordinates.
    pub directions: Vec<Vec<Q>>,
    /// A point of the subspace in coweight coordinates.
    pub offset: Vec<Q>,
}

impl FixedApartment {
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    /// E.g. `(0, 1/3) + span{(1, 0)}` in simple coroot coordinates.
    pub fn describe(&self) -> String {
        let dirs: Vec<String> = self.directions_coroot.iter().map(|d| fmt_qvec(d)).collect();
        format!("{} + span{{{}}}", fmt_qvec(&self.offset_coroot), dirs.join(", "))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let diff: Vec<Q> = v.iter().zip(&self.offset).map(|(a, b)| *a - *b).collect();
        let cols: QMatrix = (0..v.len())
            .map(|i| self.directions.iter().map(|d| d[i]).collect())
            .collect();
        solve_affine(&cols, &diff).is_some()
    }
}

/// Relative Newton point of a fixed element, by two routes.
#[derive(Debug, Clone)]
pub struct RelativeNewton {
    /// `lambda / n` from the absolute translation `t^lambda`.
    pub absolute: Vec<Q>,
    /// Displacement of the base point under the `n`-fold product, divided by `n`.
    pub from_base_point: Vec<Q>,
    /// Relative dominant representative.
    pub dominant: Vec<Q>,
}

#[derive(Debug, Clone)]
pub struct FixedSubgroup {
    group: AffineWeylGroup,
    pub sigma: Twist,
    pub action: AffineAction,
    pub apartment: FixedApartment,
    /// Barycenter of the base alcove (fixed by `sigma`).
    pub barycenter: Vec<Q>,
    generators: Vec<AffineElement>,
    /// The `sigma`-orbit on the affine simple reflections behind each generator.
    pub generator_orbits: Vec<Vec<usize>>,
    omega: Vec<AffineElement>,
    /// Linear parts of the stabilizer of the base point.
    finite_linear: Vec<FiniteWeylElement>,
    /// Positive roots whose walls pass through the base point and meet the
    /// fixed subspace properly, with the sign of their value on the chamber.
    chamber_roots: Vec<(usize, bool)>,
}

/// Points of the vertices of the base alcove opposite each affine simple
/// reflection: zero for the affine node, `varpi_i / m_i` otherwise.
fn wall_vertex(group: &AffineWeylGroup, j: usize) -> Vec<Q> {
    let r = group.rank();
    let mut v = vec![Q::zero(); r];
    if let (c, Some(i)) = group.simple_kind()[j] {
        let h = &group.datum.positive_roots[group.datum.highest_roots[c]];
        v[i] = Q::new(1, h.root[i]);
    }
    v
}

/// All vertices of the base alcove as choices of one opposite wall per factor.
fn vertex_choices(group: &AffineWeylGroup) -> Vec<Vec<usize>> {
    let ncomp = group.datum.components.len();
    let per: Vec<Vec<usize>> = (0..ncomp)
        .map(|c| (0..group.simple_kind().len()).filter(|&j| group.simple_kind()[j].0 == c).collect())
        .collect();
    let mut out = vec![vec![]];
    for walls in &per {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<usize>| {
                walls.iter().map(move |&w| {
                    let mut p = pre.clone();
                    p.push(w);
                    p
                })
            })
            .collect();
    }
    out
}

fn choice_point(group: &AffineWeylGroup, choice: &[usize]) -> Vec<Q> {
    let r = group.rank();
    choice.iter().fold(vec![Q::zero(); r], |acc, &j| {
        acc.iter().zip(wall_vertex(group, j)).map(|(a, b)| *a + b).collect()
    })
}

/// Vertices of the base alcove, in coweight coordinates.
pub fn alcove_vertices(group: &AffineWeylGroup) -> Vec<Vec<Q>> {
    vertex_choices(group).iter().map(|c| choice_point(group, c)).collect()
}

fn normalize_choice(group: &AffineWeylGroup, choice: Vec<usize>) -> Vec<usize> {
    let mut c = choice;
    c.sort_by_key(|&j| group.simple_kind()[j].0);
    c
}

/// The affine map of the apartment that permutes the walls of the base
/// alcove as `sigma` permutes the affine simple reflections.
pub fn sigma_affine_action(group: &AffineWeylGroup, sigma: &Twist) -> Result<AffineAction> {
    let r = group.rank();
    let perm = sigma.simple_permutation();
    let ncomp = group.datum.components.len();
    let base: Vec<usize> = (0..ncomp).map(|c| r + c).collect();
    let image = |choice: &[usize]| -> Vec<Q> {
        let img: Vec<usize> = choice.iter().map(|&j| perm[j]).collect();
        choice_point(group, &normalize_choice(group, img))
    };
    let b = image(&base);
    let mut cols = vec![];
    for i in 0..r {
        let c = group.simple_kind()[i].0;
        let mut choice = base.clone();
        choice[c] = i;
        let m = Q::new(1, 1) / wall_vertex(group, i)[i];
        cols.push(image(&choice).iter().zip(&b).map(|(x, y)| (*x - *y) * m).collect::<Vec<Q>>());
    }
    let linear: QMatrix = (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect();
    let action = AffineAction { linear, translation: b };

    // The same map from the factorization sigma = Ad(omega) ∘ theta'.
    let om = sigma.omega_element();
    let mut pv = vec![vec![Q::zero(); r]; r];
    for (i, &p) in sigma.diagram_perm.iter().enumerate() {
        pv[p][i] = Q::one();
    }
    let direct = |v: &[Q]| -> Vec<Q> {
        let pvv: Vec<Q> = pv.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |a, (x, y)| a + *x * *y)).collect();
        group.act_point(&om, &pvv)
    };
    for choice in vertex_choices(group) {
        let p = choice_point(group, &choice);
        if action.apply(&p) != direct(&p) {
            return Err(Error::Internal("wall permutation and omega action disagree".into()));
        }
    }
    Ok(action)
}

/// Affine fixed subspace of an action, with canonical coordinates; the base
/// point is filled in by the caller.
fn fixed_subspace(group: &AffineWeylGroup, action: &AffineAction) -> Result<FixedApartment> {
    let r = group.rank();
    let ct = to_q(&crate::linalg::transpose(&group.datum.cartan));
    // (A - I) C^T c = -b, c in coroot coordinates
    let am: QMatrix = (0..r)
        .map(|i| (0..r).map(|j| action.linear[i][j] - if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    let m = crate::linalg::mat_mul_q(&am, &ct);
    let rhs: Vec<Q> = action.translation.iter().map(|x| -*x).collect();
    let (part, kernel) = solve_affine(&m, &rhs)
        .ok_or_else(|| Error::Internal("twist has no fixed point on the apartment".into()))?;
    let to_cw = |c: &[Q]| crate::linalg::mat_vec_q(&ct, c);
    Ok(FixedApartment {
        base_point: vec![],
        offset: to_cw(&part),
        directions: kernel.iter().map(|k| to_cw(k)).collect(),
        offset_coroot: part,
        directions_coroot: kernel,
    })
}

fn pair(root: &[i64], v: &[Q]) -> Q {
    root.iter().zip(v).fold(Q::zero(), |acc, (a, x)| acc + q(*a) * *x)
}

impl FixedSubgroup {
    pub fn new(group: &AffineWeylGroup, sigma: &Twist) -> Result<Self> {
        let group = group.clone();
        let r = group.rank();
        let action = sigma_affine_action(&group, sigma)?;
        let mut apartment = fixed_subspace(&group, &action)?;

        let choices = vertex_choices(&group);
        let nv = choices.len() as i64;
        let barycenter: Vec<Q> = choices
            .iter()
            .map(|c| choice_point(&group, c))
            .fold(vec![Q::zero(); r], |acc, p| acc.iter().zip(&p).map(|(a, b)| *a + *b).collect())
            .into_iter()
            .map(|x| x / q(nv))
            .collect();
        if action.apply(&barycenter) != barycenter {
            return Err(Error::Internal("alcove barycenter is not fixed".into()));
        }

        // generators: longest elements of finite parabolics of sigma-orbits
        let perm = sigma.simple_permutation();
        let simples = group.simple_reflections();
        let mut orbits: Vec<Vec<usize>> = vec![];
        let mut done = vec![false; simples.len()];
        for start in 0..simples.len() {
            if done[start] {
                continue;
            }
            let mut orbit = vec![];
            let mut j = start;
            while !done[j] {
                done[j] = true;
                orbit.push(j);
                j = perm[j];
            }
            orbit.sort();
            orbits.push(orbit);
        }
        let mut generators = vec![];
        let mut generator_orbits = vec![];
        for orbit in orbits {
            let gens: Vec<AffineElement> = orbit.iter().map(|&j| simples[j]).collect();
            let Some(elems) = parabolic_elements(&group, &gens, 1200) else {
                continue;
            };
            let longest = *elems.iter().max_by_key(|x| (group.length(x), std::cmp::Reverse(**x))).unwrap();
            if sigma.apply(&group, &longest) != longest {
                return Err(Error::Internal("orbit longest element is not fixed".into()));
            }
            generators.push(longest);
            generator_orbits.push(orbit);
        }
        let omega: Vec<AffineElement> = {
            let mut v: Vec<AffineElement> = group
                .omega_elements()
                .iter()
                .copied()
                .filter(|o| sigma.apply(&group, o) == *o)
                .collect();
            v.sort();
            v
        };

        // special vertex: among orbit barycenters of alcove vertices, those with
        // the largest stabilizer, closest to the alcove barycenter
        let mut seen = BTreeSet::new();
        let mut candidates: Vec<Vec<Q>> = vec![];
        for c in &choices {
            let key = normalize_choice(&group, c.clone());
            if seen.contains(&key) {
                continue;
            }
            let mut orbit = vec![];
            let mut cur = key.clone();
            while seen.insert(cur.clone()) {
                orbit.push(choice_point(&group, &cur));
                cur = normalize_choice(&group, cur.iter().map(|&j| perm[j]).collect());
            }
            let n = orbit.len() as i64;
            let bc: Vec<Q> = (0..r).map(|i| orbit.iter().fold(Q::zero(), |a, p| a + p[i]) / q(n)).collect();
            candidates.push(bc);
        }
        let stabilizer = |p: &[Q]| -> Vec<AffineElement> {
            generators.iter().copied().filter(|g| group.act_point(g, p) == p).collect()
        };
        let orders: Vec<usize> = candidates
            .iter()
            .map(|p| parabolic_elements(&group, &stabilizer(p), 1200).map_or(0, |s| s.len()))
            .collect();
        let best = *orders.iter().max().unwrap();
        let dist = |p: &[Q]| {
            let d: Vec<Q> = p.iter().zip(&barycenter).map(|(a, b)| *a - *b).collect();
            group.datum.inner(&d, &d)
        };
        let e = candidates
            .iter()
            .zip(&orders)
            .filter(|(_, &o)| o == best)
            .map(|(p, _)| p.clone())
            .min_by(|a, b| dist(a).cmp(&dist(b)).then_with(|| a.cmp(b)))
            .unwrap();
        if !apartment.contains(&e) {
            return Err(Error::Internal("special vertex is not fixed".into()));
        }
        apartment.base_point = e.clone();

        let stab = parabolic_elements(&group, &stabilizer(&e), 1200).unwrap();
        let finite_linear: Vec<FiniteWeylElement> =
            stab.iter().map(|x| x.w).collect::<BTreeSet<_>>().into_iter().collect();
        let d: Vec<Q> = barycenter.iter().zip(&e).map(|(a, b)| *a - *b).collect();
        let chamber_roots = group
            .datum
            .positive_roots
            .iter()
            .enumerate()
            .filter(|(_, rt)| {
                pair(&rt.root, &e).is_integer()
                    && apartment.directions.iter().any(|k| !pair(&rt.root, k).is_zero())
            })
            .map(|(i, rt)| (i, pair(&rt.root, &d).is_positive()))
            .collect();

        Ok(Self {
            group,
            sigma: sigma.clone(),
            action,
            apartment,
            barycenter,
            generators,
            generator_orbits,
            omega,
            finite_linear,
            chamber_roots,
        })
    }

    pub fn absolute(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.generators
    }

    pub fn relative_omega(&self) -> &[AffineElement] {
        &self.omega
    }

    pub fn relative_finite_order(&self) -> usize {
        self.finite_linear.len()
    }

    pub fn is_fixed(&self, x: &AffineElement) -> bool {
        self.sigma.apply(&self.group, x) == *x
    }

    /// Number of distinct walls of the fixed subspace separating the alcove
    /// barycenter from its image.
    pub fn relative_length(&self, x: &AffineElement) -> u32 {
        let b = &self.barycenter;
        let xb = self.group.act_point(x, b);
        let p0 = &self.apartment.offset;
        let mut walls: BTreeSet<(Vec<Q>, Q)> = BTreeSet::new();
        for rt in &self.group.datum.positive_roots {
            let a: Vec<Q> = self.apartment.directions.iter().map(|k| pair(&rt.root, k)).collect();
            let Some(lead) = a.iter().find(|v| !v.is_zero()).copied() else {
                continue;
            };
            let (u, v) = (pair(&rt.root, b), pair(&rt.root, &xb));
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            let c0 = pair(&rt.root, p0);
            let coeffs: Vec<Q> = a.iter().map(|x| *x / lead).collect();
            let mut k = lo.ceil().to_integer();
            while q(k) < hi {
                if q(k) > lo {
                    walls.insert((coeffs.clone(), (q(k) - c0) / lead));
                }
                k += 1;
            }
        }
        walls.len() as u32
    }

    /// Relative dominant representative of a vector of the fixed direction space.
    pub fn relative_dominant(&self, v: &[Q]) -> Vec<Q> {
        let roots = &self.group.datum.positive_roots;
        for &w in &self.finite_linear {
            let img = self.group.datum.weyl.act(w, &RationalCoweight::new(v.to_vec())).coords;
            let ok = self.chamber_roots.iter().all(|&(i, pos)| {
                let val = pair(&roots[i].root, &img);
                if pos {
                    !val.is_negative()
                } else {
                    !val.is_positive()
                }
            });
            if ok {
                return img;
            }
        }
        unreachable!("relative Weyl group orbit meets the dominant chamber")
    }

    pub fn relative_newton(&self, theta: &Twist, x: &AffineElement) -> Result<RelativeNewton> {
        if !theta.commutes_with(&self.group, &self.sigma) {
            return Err(Error::NotApplicable("twist does not commute with sigma".into()));
        }
        if !self.is_fixed(x) {
            return Err(Error::NotApplicable("element is not fixed by sigma".into()));
        }
        let tw = Twisted::new(self, theta)?;
        let (n, p) = tw.newton_data(x);
        let r = self.group.rank();
        let absolute: Vec<Q> = p.lambda[..r].iter().map(|&v| Q::new(v, n as i64)).collect();
        let e = &self.apartment.base_point;
        let moved = self.group.act_point(&p, e);
        let from_base_point: Vec<Q> = moved.iter().zip(e).map(|(a, b)| (*a - *b) / q(n as i64)).collect();
        for k in &self.apartment.directions {
            let pt: Vec<Q> = e.iter().zip(k).map(|(a, b)| *a + *b).collect();
            let img = self.group.act_point(&p, &pt);
            let shift: Vec<Q> = img.iter().zip(&pt).map(|(a, b)| (*a - *b) / q(n as i64)).collect();
            if shift != from_base_point {
                return Err(Error::Internal("product does not act by translation on the fixed subspace".into()));
            }
        }
        let dominant = self.relative_dominant(&absolute);
        Ok(RelativeNewton { absolute, from_base_point, dominant })
    }

    /// Word length over the relative generators, by breadth-first search from
    /// the relative length-zero elements. Returns `None` beyond `bound`.
    pub fn word_lengths(&self, bound: u32) -> BTreeMap<AffineElement, u32> {
        let mut dist: BTreeMap<AffineElement, u32> = self.omega.iter().map(|o| (*o, 0)).collect();
        let mut frontier: Vec<AffineElement> = self.omega.clone();
        for k in 1..=bound {
            let mut next = vec![];
            for x in &frontier {
                for s in &self.generators {
                    let y = self.group.mul(x, s);
                    if let Entry::Vacant(e) = dist.entry(y) {
                        e.insert(k);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}

impl Reflections for FixedSubgroup {
    fn group(&self) -> &AffineWeylGroup {
        &self.group
    }
    fn len(&self, x: &AffineElement) -> u32 {
        self.relative_length(x)
    }
    fn simple(&self) -> &[AffineElement] {
        &self.generators
    }
    fn length_zero(&self) -> &[AffineElement] {
        &self.omega
    }
    fn dominant(&self, v: &[Q]) -> Vec<Q> {
        self.relative_dominant(v)
    }
}

/// Check that the relative window is exactly the set of fixed elements of
/// the corresponding absolute window, and that length additivity transfers.
pub fn verify_fixed_subgroup(fs: &FixedSubgroup, bound: u32, cap: usize) -> Result<VerificationReport> {
    let g = fs.absolute();
    let mut rep = VerificationReport::new("length-add", bound);
    let relative: Vec<AffineElement> = fs.enumerate(bound, cap)?.into_iter().flatten().collect();
    rep.elements = relative.len();
    let rel_set: BTreeSet<AffineElement> = relative.iter().copied().collect();
    let max_gen = fs.generators().iter().map(|s| g.length(s)).max().unwrap_or(1);
    let abs_bound = bound * max_gen;
    let fixed: Vec<AffineElement> = g
        .enumerate_by_length(abs_bound, cap)?
        .into_iter()
        .flatten()
        .filter(|x| fs.is_fixed(x))
        .collect();
    for x in &relative {
        if !fs.is_fixed(x) {
            rep.fail(format!("{} is generated but not fixed", g.format_element(x)));
        }
        if g.length(x) > abs_bound {
            rep.fail(format!("{} exceeds the absolute window", g.format_element(x)));
        }
    }
    let mut fixed_in_window = 0;
    for x in &fixed {
        if fs.relative_length(x) <= bound {
            fixed_in_window += 1;
            if !rel_set.contains(x) {
                rep.fail(format!("fixed element {} is not generated", g.format_element(x)));
            }
        }
    }
    // W_a part and Omega part separately
    let affine_part: BTreeSet<AffineElement> = fs
        .word_lengths(bound)
        .into_iter()
        .filter(|(x, l)| *l <= bound && g.kappa(x).coords.iter().all(|c| *c == 0))
        .map(|(x, _)| x)
        .collect();
    let fixed_affine: BTreeSet<AffineElement> = fixed
        .iter()
        .copied()
        .filter(|x| g.kappa(x).coords.iter().all(|c| *c == 0) && fs.relative_length(x) <= bound)
        .collect();
    if affine_part != fixed_affine {
        rep.fail("fixed elements of the affine Weyl group differ from the relative affine Weyl group");
    }
    let fixed_omega: Vec<AffineElement> =
        g.omega_elements().iter().copied().filter(|o| fs.is_fixed(o)).collect();
    if fixed_omega.len() != fs.relative_omega().len() {
        rep.fail("relative Omega differs from the fixed part of Omega");
    }
    let mut pairs = 0usize;
    let mut additive = 0usize;
    for x in &relative {
        for y in &relative {
            pairs += 1;
            let xy = g.mul(x, y);
            if fs.relative_length(&xy) == fs.relative_length(x) + fs.relative_length(y) {
                additive += 1;
                if g.length(&xy) != g.length(x) + g.length(y) {
                    rep.fail(format!(
                        "length additivity fails for {} and {}",
                        g.format_element(x),
                        g.format_element(y)
                    ));
                }
            }
        }
    }
    rep.detail("fixed_in_window", fixed_in_window);
    rep.detail("pairs", pairs);
    rep.detail("additive_pairs", additive);
    rep.detail("relative_generators", fs.generators().len());
    rep.detail("relative_omega", fs.relative_omega().len());
    Ok(rep.finish())
}

/// The map from relative straight classes to absolute straight classes is
/// injective on the window.
pub fn map_i_and_verify(
    fs: &FixedSubgroup,
    theta: &Twist,
    gamma: &GammaSubgroup,
    bound: u32,
    cap: usize,
) -> Result<VerificationReport> {
    let g = fs.absolute();
    if !theta.commutes_with(g, &fs.sigma) {
        return Err(Error::NotApplicable("twist does not commute with sigma".into()));
    }
    for o in gamma.representatives(g) {
        if !fs.is_fixed(&o) {
            return Err(Error::InvalidGamma("subgroup is not contained in the relative Omega".into()));
        }
    }
    let rel = Twisted::new(fs, theta)?;
    let abs = Twisted::new(g, theta)?;
    let (part, _) = straight_classes_in_window(&rel, bound, gamma, cap)?;
    let abs_coinv = CoinvariantGroup::new(g, theta, gamma);
    let mut rep = VerificationReport::new("inject", bound);
    rep.classes = part.records.len();
    rep.elements = part.elements_scanned;
    for c in &part.counterexamples {
        rep.fail(c.clone());
    }
    let mut images: BTreeMap<ClassInvariant, usize> = BTreeMap::new();
    let mut rel_dominant: BTreeSet<Vec<Q>> = BTreeSet::new();
    for (i, rec) in part.records.iter().enumerate() {
        for x in &rec.elements {
            if !abs.is_straight(x) {
                rep.fail(format!("{} is relatively straight but not straight", g.format_element(x)));
            }
            let rn = fs.relative_newton(theta, x)?;
            if rn.absolute != rn.from_base_point {
                rep.fail(format!("Newton point of {} depends on the route", g.format_element(x)));
            }
            rel_dominant.insert(rn.dominant);
        }
        let img = abs.pi(&rec.representative, &abs_coinv);
        if let Some(j) = images.insert(img.clone(), i) {
            rep.fail(format!(
                "classes of {} and {} have the same image {}",
                g.format_element(&part.records[j].representative),
                g.format_element(&rec.representative),
                img
            ));
        }
    }
    // all relatively dominant Newton points lie in one closed absolute chamber
    let vecs: Vec<&Vec<Q>> = rel_dominant.iter().collect();
    for (a, u) in vecs.iter().enumerate() {
        for v in &vecs[a + 1..] {
            for rt in &g.datum.positive_roots {
                let (x, y) = (pair(&rt.root, u), pair(&rt.root, v));
                if (x.is_positive() && y.is_negative()) || (x.is_negative() && y.is_positive()) {
                    rep.fail(format!("a root hyperplane separates {} and {}", fmt_qvec(u), fmt_qvec(v)));
                }
            }
        }
    }
    rep.detail("images", images.len());
    rep.detail("relative_straight", part.straight_count);
    rep.detail("fixed_subspace", fs.apartment.describe());
    rep.detail("base_point", fmt_qvec(&g.datum.to_coroot_coords(&fs.apartment.base_point)));
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{LatticeChoice, RootDatum};

    fn group(label: &str, lat: LatticeChoice) -> AffineWeylGroup {
        AffineWeylGroup::new(RootDatum::build(label, &lat).unwrap()).unwrap()
    }

    #[test]
    fn identity_sigma() {
        let g = group("A2", LatticeChoice::simply_connected());
        let s = Twist::identity(&g);
        let fs = FixedSubgroup::new(&g, &s).unwrap();
        assert!(fs.action.is_identity());
        assert_eq!(fs.apartment.dimension(), 2);
        assert_eq!(fs.apartment.base_point, vec![q(0), q(0)]);
        for x in g.enumerate_by_length(3, 1000).unwrap().iter().flatten() {
            assert_eq!(fs.relative_length(x), g.length(x));
        }
    }

    #[test]
    fn product_swap_is_diagonal() {
        let g = group("A1xA1", LatticeChoice::adjoint());
        let s = Twist::build(&g, &[1, 0], &[0, 0]).unwrap();
        let fs = FixedSubgroup::new(&g, &s).unwrap();
        assert_eq!(fs.generators().len(), 2);
        assert_eq!(fs.relative_omega().len(), 2);
        assert_eq!(fs.apartment.dimension(), 1);
        for gen in fs.generators() {
            assert_eq!(fs.relative_length(gen), 1);
            assert_eq!(g.length(gen), 2);
        }
    }
}
