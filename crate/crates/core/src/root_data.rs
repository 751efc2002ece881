//! Root data in fundamental-coweight coordinates and the finite Weyl group.
//!
//! The cocharacter space is `Q^r` with basis the fundamental coweights, so a
//! root is stored as its coefficient vector in the simple roots (which is also
//! its coordinate vector as a linear functional) and the pairing `<v, alpha>`
//! is an integer dot product. The simple coroot `alpha_i^vee` is row `i` of the
//! Cartan matrix `C[i][j] = <alpha_i^vee, alpha_j>`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{inverse_q, q, to_q, vec_mat_q, IMatrix, Q};
use crate::{Error, Result};

/// Largest supported rank (sum over factors).
pub const MAX_RANK: usize = 4;

/// Irreducible factor of a Cartan type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: char,
    pub rank: usize,
}

impl SimpleType {
    fn cartan(self) -> IMatrix {
        let n = self.rank;
        let mut c: IMatrix = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
        let chain = |c: &mut IMatrix| {
            for i in 0..n.saturating_sub(1) {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        };
        match self.family {
            'A' => chain(&mut c),
            'B' => {
                chain(&mut c);
                // alpha_n short
                c[n - 1][n - 2] = -2;
            }
            'C' => {
                chain(&mut c);
                // alpha_n long
                c[n - 2][n - 1] = -2;
            }
            'D' => {
                chain(&mut c);
                c[n - 2][n - 1] = 0;
                c[n - 1][n - 2] = 0;
                c[n - 3][n - 1] = -1;
                c[n - 1][n - 3] = -1;
            }
            'G' => {
                // alpha_1 short, alpha_2 long
                c[0][1] = -3;
                c[1][0] = -1;
            }
            'F' => {
                chain(&mut c);
                // alpha_1, alpha_2 long; alpha_3, alpha_4 short
                c[2][1] = -2;
            }
            _ => unreachable!(),
        }
        c
    }

    /// Classified order of the Weyl group.
    pub fn weyl_order(self) -> usize {
        let n = self.rank;
        let fact = |k: usize| (1..=k).product::<usize>();
        match self.family {
            'A' => fact(n + 1),
            'B' | 'C' => (1 << n) * fact(n),
            'D' => (1 << (n - 1)) * fact(n),
            'G' => 12,
            'F' => 1152,
            _ => unreachable!(),
        }
    }

    /// Classified number of positive roots.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            'A' => n * (n + 1) / 2,
            'B' | 'C' => n * n,
            'D' => n * (n - 1),
            'G' => 6,
            'F' => 24,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A finite Cartan type, possibly a product such as `A1xA1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType(pub Vec<SimpleType>);

impl CartanType {
    pub fn parse(label: &str) -> Result<Self> {
        let unsupported = || Error::UnsupportedType(label.to_string());
        let mut factors = vec![];
        for part in label.split(['x', 'X', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = chars.next().ok_or_else(unsupported)?.to_ascii_uppercase();
            let rank: usize = chars.as_str().parse().map_err(|_| unsupported())?;
            let ok = match family {
                'A' => (1..=4).contains(&rank),
                'B' | 'C' => (2..=4).contains(&rank),
                'D' => rank == 4,
                'G' => rank == 2,
                'F' => rank == 4,
                _ => false,
            };
            if !ok {
                return Err(unsupported());
            }
            factors.push(SimpleType { family, rank });
        }
        let total: usize = factors.iter().map(|t| t.rank).sum();
        if total > MAX_RANK {
            return Err(unsupported());
        }
        Ok(CartanType(factors))
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }

    pub fn weyl_order(&self) -> usize {
        self.0.iter().map(|t| t.weyl_order()).product()
    }

    pub fn positive_root_count(&self) -> usize {
        self.0.iter().map(|t| t.positive_root_count()).sum()
    }

    /// Block-diagonal Cartan matrix.
    pub fn cartan_matrix(&self) -> IMatrix {
        let r = self.rank();
        let mut c = vec![vec![0; r]; r];
        let mut off = 0;
        for t in &self.0 {
            let block = t.cartan();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    c[off + i][off + j] = block[i][j];
                }
            }
            off += t.rank;
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Choice of translation lattice `Y` between the coroot and coweight lattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeChoice {
    Named(NamedLattice),
    /// Integer basis rows in fundamental-coweight coordinates.
    Basis { basis: IMatrix },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedLattice {
    SimplyConnected,
    Adjoint,
}

impl LatticeChoice {
    pub fn simply_connected() -> Self {
        LatticeChoice::Named(NamedLattice::SimplyConnected)
    }
    pub fn adjoint() -> Self {
        LatticeChoice::Named(NamedLattice::Adjoint)
    }
}

/// A root (coefficients in the simple roots) with its coroot (coweight
/// coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn pair(&self, v: &[i64]) -> i64 {
        self.root.iter().zip(v).map(|(a, b)| a * b).sum()
    }
    pub fn pair_q(&self, v: &[Q]) -> Q {
        self.root.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + *b * q(*a))
    }
}

/// Exact rational vector in the cocharacter space (coweight coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalCoweight {
    pub coords: Vec<Q>,
}

impl RationalCoweight {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }
    pub fn zero(dim: usize) -> Self {
        Self { coords: vec![Q::zero(); dim] }
    }
    pub fn from_ints(v: &[i64]) -> Self {
        Self { coords: v.iter().map(|&x| q(x)).collect() }
    }
    pub fn scale(&self, s: Q) -> Self {
        Self { coords: self.coords.iter().map(|x| *x * s).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for RationalCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::linalg::fmt_qvec(&self.coords))
    }
}

/// Index of an element of the finite Weyl group table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteWeylElement(pub u16);

impl FiniteWeylElement {
    pub const IDENTITY: FiniteWeylElement = FiniteWeylElement(0);
}

/// Multiplication table of `W_0` together with matrices, inverses, reduced
/// words and the root signs needed by the length formula.
#[derive(Debug, Clone)]
pub struct FiniteWeylGroup {
    rank: usize,
    matrices: Vec<Vec<i64>>,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<i64>, u16>,
    mult: Vec<u16>,
    inverse: Vec<u16>,
    /// `inv_positive[w][j]`: whether `w^{-1}(alpha_j) > 0` for positive root j.
    inv_positive: Vec<Vec<bool>>,
}

impl FiniteWeylGroup {
    fn build(cartan: &IMatrix, positive: &[Root], expected: usize) -> Result<Self> {
        let r = cartan.len();
        let simple: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut m = identity_flat(r);
                // s_i(v) = v - v_i * alpha_i^vee, alpha_i^vee = row i of C
                for k in 0..r {
                    m[k * r + i] -= cartan[i][k];
                }
                m
            })
            .collect();
        let mut matrices = vec![identity_flat(r)];
        let mut words = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(identity_flat(r), 0u16);
        let mut head = 0;
        while head < matrices.len() {
            for (i, s) in simple.iter().enumerate() {
                let m = mul_flat(&matrices[head], s, r);
                if !index.contains_key(&m) {
                    if matrices.len() > expected {
                        return Err(Error::Internal("Weyl group larger than classified order".into()));
                    }
                    index.insert(m.clone(), matrices.len() as u16);
                    let mut w = words[head].clone();
                    w.push(i);
                    words.push(w);
                    matrices.push(m);
                }
            }
            head += 1;
        }
        if matrices.len() != expected {
            return Err(Error::Internal(format!(
                "Weyl group has {} elements, expected {}",
                matrices.len(),
                expected
            )));
        }
        let n = matrices.len();
        let mut mult = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&mul_flat(&matrices[a], &matrices[b], r)];
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| mult[a * n + b] == 0).unwrap() as u16)
            .collect();
        let inv_positive = matrices
            .iter()
            .map(|m| {
                // w^{-1} alpha as covector is alpha^T M
                positive
                    .iter()
                    .map(|rt| {
                        let img: Vec<i64> = (0..r)
                            .map(|j| (0..r).map(|k| rt.root[k] * m[k * r + j]).sum())
                            .collect();
                        img.iter().all(|&x| x >= 0)
                    })
                    .collect()
            })
            .collect();
        Ok(Self { rank: r, matrices, words, index, mult, inverse, inv_positive })
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = FiniteWeylElement> {
        (0..self.order() as u16).map(FiniteWeylElement)
    }

    pub fn mul(&self, a: FiniteWeylElement, b: FiniteWeylElement) -> FiniteWeylElement {
        FiniteWeylElement(self.mult[a.0 as usize * self.order() + b.0 as usize])
    }

    pub fn inv(&self, a: FiniteWeylElement) -> FiniteWeylElement {
        FiniteWeylElement(self.inverse[a.0 as usize])
    }

    pub fn matrix(&self, w: FiniteWeylElement) -> &[i64] {
        &self.matrices[w.0 as usize]
    }

    /// Reduced word in the finite simple reflections.
    pub fn word(&self, w: FiniteWeylElement) -> &[usize] {
        &self.words[w.0 as usize]
    }

    pub fn length(&self, w: FiniteWeylElement) -> usize {
        self.words[w.0 as usize].len()
    }

    /// Simple reflection `s_i` (generated first, right after the identity).
    pub fn simple(&self, i: usize) -> FiniteWeylElement {
        FiniteWeylElement((1 + i) as u16)
    }

    pub fn lookup(&self, matrix: &[i64]) -> Option<FiniteWeylElement> {
        self.index.get(matrix).map(|&i| FiniteWeylElement(i))
    }

    pub fn inv_positive(&self, w: FiniteWeylElement) -> &[bool] {
        &self.inv_positive[w.0 as usize]
    }

    pub fn act_int(&self, w: FiniteWeylElement, v: &[i64]) -> Vec<i64> {
        let m = self.matrix(w);
        let r = self.rank;
        (0..r).map(|i| (0..r).map(|k| m[i * r + k] * v[k]).sum()).collect()
    }

    pub fn act(&self, w: FiniteWeylElement, v: &RationalCoweight) -> RationalCoweight {
        let m = self.matrix(w);
        let r = self.rank;
        RationalCoweight::new(
            (0..r)
                .map(|i| (0..r).fold(Q::zero(), |acc, k| acc + v.coords[k] * q(m[i * r + k])))
                .collect(),
        )
    }
}

fn identity_flat(r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

pub(crate) fn mul_flat(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x != 0 {
                for j in 0..r {
                    out[i * r + j] += x * b[k * r + j];
                }
            }
        }
    }
    out
}

/// Root datum with translation lattice `Y`.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub cartan: IMatrix,
    /// Basis rows of `Y` in coweight coordinates.
    pub lattice_basis: IMatrix,
    /// Positive roots; simple roots come first in index order.
    pub positive_roots: Vec<Root>,
    /// Simple-root indices of each irreducible factor.
    pub components: Vec<Vec<usize>>,
    /// Highest root of each factor (index into `positive_roots`).
    pub highest_roots: Vec<usize>,
    pub weyl: FiniteWeylGroup,
    lattice_inverse: Vec<Vec<Q>>,
}

impl RootDatum {
    pub fn build(type_label: &str, lattice: &LatticeChoice) -> Result<Self> {
        let cartan_type = CartanType::parse(type_label)?;
        Self::from_type(cartan_type, lattice)
    }

    pub fn from_type(cartan_type: CartanType, lattice: &LatticeChoice) -> Result<Self> {
        let cartan = cartan_type.cartan_matrix();
        let r = cartan.len();
        let positive_roots = positive_roots(&cartan);
        if positive_roots.len() != cartan_type.positive_root_count() {
            return Err(Error::Internal("positive root count mismatch".into()));
        }
        let mut components = vec![];
        let mut off = 0;
        for t in &cartan_type.0 {
            components.push((off..off + t.rank).collect::<Vec<_>>());
            off += t.rank;
        }
        let highest_roots = components
            .iter()
            .map(|comp| {
                (0..positive_roots.len())
                    .filter(|&j| {
                        positive_roots[j]
                            .root
                            .iter()
                            .enumerate()
                            .all(|(i, &c)| c == 0 || comp.contains(&i))
                    })
                    .max_by_key(|&j| positive_roots[j].root.iter().sum::<i64>())
                    .unwrap()
            })
            .collect();
        let lattice_basis = match lattice {
            LatticeChoice::Named(NamedLattice::SimplyConnected) => cartan.clone(),
            LatticeChoice::Named(NamedLattice::Adjoint) => crate::linalg::identity_i(r),
            LatticeChoice::Basis { basis } => basis.clone(),
        };
        if lattice_basis.len() != r || lattice_basis.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidLattice("basis must be square of size rank".into()));
        }
        let lattice_inverse = inverse_q(&to_q(&lattice_basis))
            .ok_or_else(|| Error::InvalidLattice("basis is singular".into()))?;
        let weyl = FiniteWeylGroup::build(&cartan, &positive_roots, cartan_type.weyl_order())?;
        let datum = Self {
            cartan_type,
            cartan,
            lattice_basis,
            positive_roots,
            components,
            highest_roots,
            weyl,
            lattice_inverse,
        };
        for (i, row) in datum.cartan.iter().enumerate() {
            if !datum.in_lattice(row) {
                return Err(Error::InvalidLattice(format!(
                    "coroot {} is not in the translation lattice",
                    i + 1
                )));
            }
        }
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Simple coroot `alpha_i^vee` in coweight coordinates.
    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.cartan[i]
    }

    /// Coordinates of `v` in the lattice basis, if integral.
    pub fn lattice_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c = vec_mat_q(&v.iter().map(|&x| q(x)).collect::<Vec<_>>(), &self.lattice_inverse);
        c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    pub fn in_lattice(&self, v: &[i64]) -> bool {
        self.lattice_coords(v).is_some()
    }

    pub fn finite_weyl_act(&self, w: FiniteWeylElement, v: &RationalCoweight) -> RationalCoweight {
        self.weyl.act(w, v)
    }

    /// Convert coweight coordinates to coordinates in the simple coroots.
    pub fn to_coroot_coords(&self, v: &[Q]) -> Vec<Q> {
        // v = C^T c
        let ct = to_q(&crate::linalg::transpose(&self.cartan));
        let inv = inverse_q(&ct).expect("Cartan matrix is invertible");
        crate::linalg::mat_vec_q(&inv, v)
    }

    pub fn is_dominant(&self, v: &RationalCoweight) -> bool {
        v.coords.iter().all(|x| !x.is_negative())
    }

    /// The dominant element `v'` of the `W_0`-orbit of `v` and `w` with
    /// `w(v) = v'`.
    pub fn dominant_representative(&self, v: &RationalCoweight) -> (RationalCoweight, FiniteWeylElement) {
        let mut cur = v.clone();
        let mut w = FiniteWeylElement::IDENTITY;
        while let Some(i) = cur.coords.iter().position(|x| x.is_negative()) {
            let s = self.weyl.simple(i);
            cur = self.weyl.act(s, &cur);
            w = self.weyl.mul(s, w);
        }
        (cur, w)
    }

    /// W-invariant inner product `sum_{alpha>0} <u,alpha><v,alpha>`.
    pub fn inner(&self, u: &[Q], v: &[Q]) -> Q {
        self.positive_roots
            .iter()
            .fold(Q::zero(), |acc, rt| acc + rt.pair_q(u) * rt.pair_q(v))
    }
}

fn positive_roots(cartan: &IMatrix) -> Vec<Root> {
    let r = cartan.len();
    let mut roots: Vec<Root> = (0..r)
        .map(|i| {
            let mut root = vec![0; r];
            root[i] = 1;
            Root { root, coroot: cartan[i].clone() }
        })
        .collect();
    let mut head = 0;
    while head < roots.len() {
        for i in 0..r {
            let b = roots[head].clone();
            // s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
            let pairing: i64 = (0..r).map(|k| cartan[i][k] * b.root[k]).sum();
            let mut root = b.root.clone();
            root[i] -= pairing;
            // s_i(beta^vee) = beta^vee - <beta^vee, alpha_i> alpha_i^vee
            let mut coroot = b.coroot.clone();
            let c = b.coroot[i];
            for k in 0..r {
                coroot[k] -= c * cartan[i][k];
            }
            if root.iter().all(|&x| x >= 0) && root.iter().any(|&x| x != 0) && !roots.iter().any(|x| x.root == root) {
                roots.push(Root { root, coroot });
            }
        }
        head += 1;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;

    #[test]
    fn catalog_counts() {
        for label in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4", "A1xA1", "A2xA1", "B2xA1"] {
            let t = CartanType::parse(label).unwrap();
            let d = RootDatum::from_type(t.clone(), &LatticeChoice::simply_connected()).unwrap();
            assert_eq!(d.positive_roots.len(), t.positive_root_count(), "{label}");
            assert_eq!(d.weyl.order(), t.weyl_order(), "{label}");
        }
    }

    #[test]
    fn small_tables() {
        let a1 = RootDatum::build("A1", &LatticeChoice::adjoint()).unwrap();
        assert_eq!(a1.positive_roots.len(), 1);
        // alpha^vee = 2 varpi^vee
        assert_eq!(a1.simple_coroot(0), &[2]);
        let a2 = RootDatum::build("A2", &LatticeChoice::simply_connected()).unwrap();
        assert_eq!((a2.positive_roots.len(), a2.weyl.order()), (3, 6));
        let b2 = RootDatum::build("B2", &LatticeChoice::simply_connected()).unwrap();
        assert_eq!((b2.positive_roots.len(), b2.weyl.order()), (4, 8));
        // alpha long, beta short: highest root alpha + 2 beta
        assert_eq!(b2.positive_roots[b2.highest_roots[0]].root, vec![1, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(RootDatum::build("E6", &LatticeChoice::adjoint()), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootDatum::build("A5", &LatticeChoice::adjoint()), Err(Error::UnsupportedType(_))));
        // Y = 2 Z varpi^vee misses alpha^vee? no: alpha^vee = 2 varpi, so use 4 varpi
        let bad = LatticeChoice::Basis { basis: vec![vec![4]] };
        assert!(matches!(RootDatum::build("A1", &bad), Err(Error::InvalidLattice(_))));
    }

    #[test]
    fn reflection_on_own_coroot() {
        let a1 = RootDatum::build("A1", &LatticeChoice::simply_connected()).unwrap();
        let s = a1.weyl.simple(0);
        let v = RationalCoweight::from_ints(&[2]);
        assert_eq!(a1.finite_weyl_act(s, &v), RationalCoweight::from_ints(&[-2]));
        assert_eq!(a1.finite_weyl_act(FiniteWeylElement::IDENTITY, &v), v);
    }

    #[test]
    fn two_reflections_in_a2() {
        let a2 = RootDatum::build("A2", &LatticeChoice::simply_connected()).unwrap();
        let (s1, s2) = (a2.weyl.simple(0), a2.weyl.simple(1));
        let w = a2.weyl.mul(s1, s2);
        // by hand: s2(a1v) = a1v + a2v = (1,1); s1(1,1) = (1,1) - 1*(2,-1) = (-1,2) = a2v
        let a1v = RationalCoweight::from_ints(&[2, -1]);
        assert_eq!(a2.finite_weyl_act(w, &a1v), RationalCoweight::from_ints(&[-1, 2]));
    }

    #[test]
    fn dominant_rep_small() {
        let a1 = RootDatum::build("A1", &LatticeChoice::simply_connected()).unwrap();
        let (v, w) = a1.dominant_representative(&RationalCoweight::from_ints(&[-2]));
        assert_eq!(v, RationalCoweight::from_ints(&[2]));
        assert_eq!(w, a1.weyl.simple(0));
        let (z, w0) = a1.dominant_representative(&RationalCoweight::zero(1));
        assert!(z.is_zero());
        assert_eq!(w0, FiniteWeylElement::IDENTITY);
        let _ = Q::new(1, 2);
    }
}
