//! The extended affine Weyl group `W = Y ⋊ W_0 = W_a ⋊ Omega`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{inverse_q, q, smith_normal_form, to_q, vec_mat_q, IMatrix, QMatrix, Q};
use crate::root_data::{FiniteWeylElement, RationalCoweight, RootDatum, MAX_RANK};
use crate::{Error, Result};

/// `t^lambda w` with `lambda` in coweight coordinates (unused slots zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineElement {
    pub lambda: [i64; MAX_RANK],
    pub w: FiniteWeylElement,
}

impl AffineElement {
    pub const IDENTITY: AffineElement =
        AffineElement { lambda: [0; MAX_RANK], w: FiniteWeylElement::IDENTITY };

    pub fn translation(lambda: &[i64]) -> Self {
        let mut l = [0; MAX_RANK];
        l[..lambda.len()].copy_from_slice(lambda);
        AffineElement { lambda: l, w: FiniteWeylElement::IDENTITY }
    }

    pub fn finite(w: FiniteWeylElement) -> Self {
        AffineElement { lambda: [0; MAX_RANK], w }
    }

    pub fn is_translation(&self) -> bool {
        self.w == FiniteWeylElement::IDENTITY
    }
}

/// An element of `Omega ≅ Y / Z Phi^vee` in invariant-factor coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaElement {
    pub coords: Vec<i64>,
}

impl fmt::Display for OmegaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone)]
struct OmegaData {
    /// Invariant factors greater than one.
    factors: Vec<i64>,
    /// Maps `lambda` (row vector, coweight coordinates) to raw coordinates.
    kappa_matrix: QMatrix,
    /// Length-zero representatives, indexed by mixed-radix encoding.
    elements: Vec<AffineElement>,
}

#[derive(Debug, Clone)]
pub struct AffineWeylGroup {
    pub datum: RootDatum,
    simple: Vec<AffineElement>,
    /// For each affine simple reflection: its component and, if finite, the
    /// finite simple index.
    simple_kind: Vec<(usize, Option<usize>)>,
    omega: OmegaData,
}

impl AffineWeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        let r = datum.rank();
        let weyl = &datum.weyl;
        let mut simple: Vec<AffineElement> =
            (0..r).map(|i| AffineElement::finite(weyl.simple(i))).collect();
        let mut simple_kind: Vec<(usize, Option<usize>)> = (0..r)
            .map(|i| (datum.components.iter().position(|c| c.contains(&i)).unwrap(), Some(i)))
            .collect();
        for (c, &h) in datum.highest_roots.iter().enumerate() {
            let rt = &datum.positive_roots[h];
            let mut m = vec![0i64; r * r];
            for k in 0..r {
                for j in 0..r {
                    m[k * r + j] = i64::from(k == j) - rt.coroot[k] * rt.root[j];
                }
            }
            let s_theta = weyl
                .lookup(&m)
                .ok_or_else(|| Error::Internal("highest root reflection missing".into()))?;
            let mut lambda = [0; MAX_RANK];
            lambda[..r].copy_from_slice(&rt.coroot);
            simple.push(AffineElement { lambda, w: s_theta });
            simple_kind.push((c, None));
        }

        // Omega = Y / Z Phi^vee via Smith normal form of the coroots in Y-coordinates.
        let binv = inverse_q(&to_q(&datum.lattice_basis)).unwrap();
        let coroots_y: IMatrix = datum
            .cartan
            .iter()
            .map(|row| {
                datum
                    .lattice_coords(row)
                    .ok_or_else(|| Error::InvalidLattice("coroot outside lattice".into()))
            })
            .collect::<Result<_>>()?;
        let snf = smith_normal_form(&coroots_y);
        let keep: Vec<usize> = (0..r).filter(|&i| snf.diag[i] != 1).collect();
        let factors: Vec<i64> = keep.iter().map(|&i| snf.diag[i]).collect();
        if factors.contains(&0) {
            return Err(Error::InvalidLattice("coroots do not span a full-rank sublattice".into()));
        }
        let right_q = to_q(&snf.right);
        let full = crate::linalg::mat_mul_q(&binv, &right_q);
        let kappa_matrix: QMatrix =
            full.iter().map(|row| keep.iter().map(|&j| row[j]).collect()).collect();
        let right_inv = inverse_q(&right_q).unwrap();

        let mut group = Self {
            datum,
            simple,
            simple_kind,
            omega: OmegaData { factors, kappa_matrix, elements: vec![] },
        };
        let total: i64 = group.omega.factors.iter().product();
        let mut elements = vec![];
        for code in 0..total {
            let coords = group.decode_omega(code as usize);
            // y = sum c_i f_i with f_i row i of V^{-1}; lambda = y B
            let mut y = vec![Q::zero(); r];
            for (ci, &pos) in coords.iter().zip(&keep) {
                for j in 0..r {
                    y[j] += q(*ci) * right_inv[pos][j];
                }
            }
            let lam_q = vec_mat_q(&y, &to_q(&group.datum.lattice_basis));
            let lam: Vec<i64> = lam_q.iter().map(|x| x.to_integer()).collect();
            let mut x = AffineElement::translation(&lam);
            // descend to the length-zero element of the coset
            while let Some(s) = group.simple.iter().find(|s| group.length(&group.mul(s, &x)) < group.length(&x)) {
                x = group.mul(s, &x);
            }
            if group.kappa(&x).coords != coords {
                return Err(Error::Internal("Omega representative has wrong class".into()));
            }
            elements.push(x);
        }
        group.omega.elements = elements;
        Ok(group)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Affine simple reflections: finite ones first, then one per factor.
    pub fn simple_reflections(&self) -> &[AffineElement] {
        &self.simple
    }

    /// Component and finite index (if any) of each affine simple reflection.
    pub fn simple_kind(&self) -> &[(usize, Option<usize>)] {
        &self.simple_kind
    }

    pub fn omega_factors(&self) -> &[i64] {
        &self.omega.factors
    }

    pub fn omega_order(&self) -> usize {
        self.omega.elements.len()
    }

    pub fn omega_elements(&self) -> &[AffineElement] {
        &self.omega.elements
    }

    fn decode_omega(&self, mut code: usize) -> Vec<i64> {
        let mut out = vec![0; self.omega.factors.len()];
        for (i, &d) in self.omega.factors.iter().enumerate().rev() {
            out[i] = (code % d as usize) as i64;
            code /= d as usize;
        }
        out
    }

    fn encode_omega(&self, coords: &[i64]) -> usize {
        coords
            .iter()
            .zip(&self.omega.factors)
            .fold(0usize, |acc, (c, d)| acc * *d as usize + c.rem_euclid(*d) as usize)
    }

    pub fn omega_from_coords(&self, coords: &[i64]) -> Result<AffineElement> {
        if coords.is_empty() {
            return Ok(self.omega.elements[0]);
        }
        if coords.len() != self.omega.factors.len() {
            return Err(Error::InvalidTwist(format!(
                "Omega has {} cyclic factors {:?}, got coordinates {:?}",
                self.omega.factors.len(),
                self.omega.factors,
                coords
            )));
        }
        Ok(self.omega.elements[self.encode_omega(coords)])
    }

    pub fn omega_normalize(&self, coords: &[i64]) -> OmegaElement {
        OmegaElement {
            coords: coords.iter().zip(&self.omega.factors).map(|(c, d)| c.rem_euclid(*d)).collect(),
        }
    }

    pub fn omega_add(&self, a: &OmegaElement, b: &OmegaElement) -> OmegaElement {
        let s: Vec<i64> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.omega_normalize(&s)
    }

    pub fn multiply(&self, x: &AffineElement, y: &AffineElement) -> AffineElement {
        self.mul(x, y)
    }

    pub(crate) fn mul(&self, x: &AffineElement, y: &AffineElement) -> AffineElement {
        let r = self.rank();
        let wy = self.datum.weyl.act_int(x.w, &y.lambda[..r]);
        let mut lambda = x.lambda;
        for i in 0..r {
            lambda[i] += wy[i];
        }
        AffineElement { lambda, w: self.datum.weyl.mul(x.w, y.w) }
    }

    pub fn inverse(&self, x: &AffineElement) -> AffineElement {
        let r = self.rank();
        let winv = self.datum.weyl.inv(x.w);
        let neg: Vec<i64> = x.lambda[..r].iter().map(|v| -v).collect();
        AffineElement::translation(&self.datum.weyl.act_int(winv, &neg)).with_w(winv)
    }

    /// Iwahori–Matsumoto length.
    pub fn length(&self, x: &AffineElement) -> u32 {
        let pos = self.datum.weyl.inv_positive(x.w);
        let lam = &x.lambda[..self.rank()];
        self.datum
            .positive_roots
            .iter()
            .zip(pos)
            .map(|(rt, &p)| {
                let m = rt.pair(lam);
                (if p { m.abs() } else { (m - 1).abs() }) as u32
            })
            .sum()
    }

    pub fn kappa(&self, x: &AffineElement) -> OmegaElement {
        let lam: Vec<Q> = x.lambda[..self.rank()].iter().map(|&v| q(v)).collect();
        let raw = vec_mat_q(&lam, &self.omega.kappa_matrix);
        OmegaElement {
            coords: raw
                .iter()
                .zip(&self.omega.factors)
                .map(|(c, d)| c.to_integer().rem_euclid(*d))
                .collect(),
        }
    }

    pub fn omega_element_of(&self, x: &AffineElement) -> AffineElement {
        self.omega.elements[self.encode_omega(&self.kappa(x).coords)]
    }

    /// Affine action `v -> w(v) + lambda` on the apartment.
    pub fn act_point(&self, x: &AffineElement, v: &[Q]) -> Vec<Q> {
        let r = self.rank();
        let wv = self.datum.weyl.act(x.w, &RationalCoweight::new(v.to_vec()));
        (0..r).map(|i| wv.coords[i] + q(x.lambda[i])).collect()
    }

    pub fn lambda(&self, x: &AffineElement) -> Vec<i64> {
        x.lambda[..self.rank()].to_vec()
    }

    /// All elements of length at most `bound`, grouped by length, each shell
    /// sorted by normal form.
    pub fn enumerate_by_length(&self, bound: u32, cap: usize) -> Result<Vec<Vec<AffineElement>>> {
        let mut shells: Vec<Vec<AffineElement>> = vec![{
            let mut v = self.omega.elements.clone();
            v.sort();
            v
        }];
        let mut total = shells[0].len();
        for k in 0..bound {
            let mut next = BTreeSet::new();
            for x in &shells[k as usize] {
                for s in &self.simple {
                    let y = self.mul(x, s);
                    if self.length(&y) == k + 1 {
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

    pub fn format_element(&self, x: &AffineElement) -> String {
        let lam: Vec<String> = x.lambda[..self.rank()].iter().map(|v| v.to_string()).collect();
        let word: Vec<String> =
            self.datum.weyl.word(x.w).iter().map(|i| format!("s{}", i + 1)).collect();
        let w = if word.is_empty() { "1".to_string() } else { word.join("") };
        format!("t({})·{}", lam.join(","), w)
    }
}

impl AffineElement {
    fn with_w(mut self, w: FiniteWeylElement) -> Self {
        self.w = w;
        self
    }
}

/// Default element cap for window enumeration.
pub const DEFAULT_CAP: usize = 2_000_000;
