//! Length-preserving automorphisms `theta = Ad(omega) ∘ theta'` of `W` and
//! subgroups of `Omega`.

use std::collections::BTreeSet;

use crate::affine::{AffineElement, AffineWeylGroup, OmegaElement};
use crate::root_data::{FiniteWeylElement, MAX_RANK};
use crate::{Error, Result};

/// Window used to spot-check length preservation at construction.
const LENGTH_CHECK_BOUND: u32 = 4;
const LENGTH_CHECK_CAP: usize = 200_000;

#[derive(Debug, Clone)]
pub struct Twist {
    pub diagram_perm: Vec<usize>,
    pub omega: OmegaElement,
    omega_elem: AffineElement,
    omega_inv: AffineElement,
    weyl_conj: Vec<FiniteWeylElement>,
    simple_perm: Vec<usize>,
    order: usize,
}

impl Twist {
    pub fn identity(group: &AffineWeylGroup) -> Self {
        Self::build(group, &(0..group.rank()).collect::<Vec<_>>(), &[]).expect("identity twist")
    }

    /// Build `theta = Ad(omega) ∘ theta'` where `theta'` permutes the finite
    /// simple reflections by `perm` and `omega` is given in `Omega` coordinates
    /// (empty means zero).
    pub fn build(group: &AffineWeylGroup, perm: &[usize], omega: &[i64]) -> Result<Self> {
        let datum = &group.datum;
        let r = datum.rank();
        if perm.len() != r {
            return Err(Error::InvalidTwist(format!("diagram permutation must have length {r}")));
        }
        let mut seen = vec![false; r];
        for &p in perm {
            if p >= r || seen[p] {
                return Err(Error::InvalidTwist(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        for i in 0..r {
            for j in 0..r {
                if datum.cartan[perm[i]][perm[j]] != datum.cartan[i][j] {
                    return Err(Error::InvalidTwist(format!(
                        "{perm:?} does not preserve the Cartan matrix"
                    )));
                }
            }
        }
        // (P v)_{perm(i)} = v_i
        let mut pm = vec![0i64; r * r];
        for i in 0..r {
            pm[perm[i] * r + i] = 1;
        }
        let apply_p = |v: &[i64]| -> Vec<i64> {
            let mut out = vec![0; r];
            for i in 0..r {
                out[perm[i]] = v[i];
            }
            out
        };
        for b in &datum.lattice_basis {
            if !datum.in_lattice(&apply_p(b)) {
                return Err(Error::InvalidTwist(format!(
                    "{perm:?} does not stabilize the translation lattice"
                )));
            }
        }
        let mut pinv = vec![0i64; r * r];
        for i in 0..r {
            pinv[i * r + perm[i]] = 1;
        }
        let weyl_conj = datum
            .weyl
            .elements()
            .map(|w| {
                let m = crate::root_data::mul_flat(
                    &crate::root_data::mul_flat(&pm, datum.weyl.matrix(w), r),
                    &pinv,
                    r,
                );
                datum.weyl.lookup(&m).ok_or_else(|| {
                    Error::InvalidTwist(format!("{perm:?} does not normalize the Weyl group"))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let omega_elem = group.omega_from_coords(omega)?;
        let omega_norm = group.kappa(&omega_elem);
        let mut t = Twist {
            diagram_perm: perm.to_vec(),
            omega: omega_norm,
            omega_elem,
            omega_inv: group.inverse(&omega_elem),
            weyl_conj,
            simple_perm: vec![],
            order: 0,
        };

        let simples = group.simple_reflections();
        t.simple_perm = simples
            .iter()
            .map(|s| {
                let img = t.apply(group, s);
                simples.iter().position(|x| *x == img).ok_or_else(|| {
                    Error::InvalidTwist("twist does not permute the affine simple reflections".into())
                })
            })
            .collect::<Result<_>>()?;
        for om in group.omega_elements() {
            if group.length(&t.apply(group, om)) != 0 {
                return Err(Error::InvalidTwist("twist does not preserve Omega".into()));
            }
        }

        // order: smallest n with theta^n trivial on generators
        let gens: Vec<AffineElement> =
            simples.iter().chain(group.omega_elements()).copied().collect();
        let mut cur = gens.clone();
        let mut n = 0;
        loop {
            n += 1;
            cur = cur.iter().map(|x| t.apply(group, x)).collect();
            if cur == gens {
                break;
            }
            if n > 10_000 {
                return Err(Error::InvalidTwist("twist does not have finite order".into()));
            }
        }
        t.order = n;

        if let Ok(shells) = group.enumerate_by_length(LENGTH_CHECK_BOUND, LENGTH_CHECK_CAP) {
            for x in shells.iter().flatten() {
                if group.length(&t.apply(group, x)) != group.length(x) {
                    return Err(Error::InvalidTwist("twist is not length preserving".into()));
                }
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega_element(&self) -> AffineElement {
        self.omega_elem
    }

    /// Permutation of the affine simple reflections induced by the twist.
    pub fn simple_permutation(&self) -> &[usize] {
        &self.simple_perm
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    fn apply_linear(&self, x: &AffineElement) -> AffineElement {
        let mut lambda = [0; MAX_RANK];
        for (i, &p) in self.diagram_perm.iter().enumerate() {
            lambda[p] = x.lambda[i];
        }
        AffineElement { lambda, w: self.weyl_conj[x.w.0 as usize] }
    }

    pub fn apply(&self, group: &AffineWeylGroup, x: &AffineElement) -> AffineElement {
        let y = self.apply_linear(x);
        group.mul(&group.mul(&self.omega_elem, &y), &self.omega_inv)
    }

    pub fn apply_power(&self, group: &AffineWeylGroup, x: &AffineElement, k: usize) -> AffineElement {
        (0..k % self.order).fold(*x, |acc, _| self.apply(group, &acc))
    }

    pub fn apply_omega(&self, group: &AffineWeylGroup, o: &OmegaElement) -> OmegaElement {
        let elem = group.omega_from_coords(&o.coords).expect("valid Omega element");
        group.kappa(&self.apply(group, &elem))
    }

    pub fn acts_trivially_on_omega(&self, group: &AffineWeylGroup) -> bool {
        group.omega_elements().iter().all(|o| self.apply(group, o) == *o)
    }

    /// `g x theta(g)^{-1}`.
    pub fn twisted_conjugate(
        &self,
        group: &AffineWeylGroup,
        g: &AffineElement,
        x: &AffineElement,
    ) -> AffineElement {
        let tg = self.apply(group, g);
        group.mul(&group.mul(g, x), &group.inverse(&tg))
    }

    /// Whether `self` and `other` commute on the generators of `W`.
    pub fn commutes_with(&self, group: &AffineWeylGroup, other: &Twist) -> bool {
        group
            .simple_reflections()
            .iter()
            .chain(group.omega_elements())
            .all(|x| self.apply(group, &other.apply(group, x)) == other.apply(group, &self.apply(group, x)))
    }
}

/// A subgroup `Gamma ⊆ Omega`, stored as its full element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSubgroup {
    pub generators: Vec<OmegaElement>,
    elements: Vec<OmegaElement>,
}

impl GammaSubgroup {
    pub fn generated(group: &AffineWeylGroup, generators: &[Vec<i64>]) -> Result<Self> {
        let nf = group.omega_factors().len();
        let gens: Vec<OmegaElement> = generators
            .iter()
            .map(|g| {
                if g.len() != nf {
                    return Err(Error::InvalidGamma(format!(
                        "generator {g:?} does not have {nf} coordinates"
                    )));
                }
                Ok(group.omega_normalize(g))
            })
            .collect::<Result<_>>()?;
        let zero = group.omega_normalize(&vec![0; nf]);
        let mut elements: BTreeSet<OmegaElement> = BTreeSet::from([zero]);
        let mut frontier: Vec<OmegaElement> = elements.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = group.omega_add(&x, g);
                if elements.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self { generators: gens, elements: elements.into_iter().collect() })
    }

    pub fn trivial(group: &AffineWeylGroup) -> Self {
        Self::generated(group, &[]).unwrap()
    }

    pub fn whole(group: &AffineWeylGroup) -> Self {
        let gens: Vec<Vec<i64>> = (0..group.omega_factors().len())
            .map(|i| (0..group.omega_factors().len()).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::generated(group, &gens).unwrap()
    }

    /// All distinct cyclic subgroups of `Omega`.
    pub fn cyclic_subgroups(group: &AffineWeylGroup) -> Vec<Self> {
        let mut out: Vec<Self> = vec![];
        for o in group.omega_elements() {
            let g = Self::generated(group, &[group.kappa(o).coords]).unwrap();
            if !out.iter().any(|h| h.elements == g.elements) {
                out.push(g);
            }
        }
        out
    }

    pub fn elements(&self) -> &[OmegaElement] {
        &self.elements
    }

    pub fn contains(&self, o: &OmegaElement) -> bool {
        self.elements.binary_search(o).is_ok()
    }

    pub fn is_stable(&self, group: &AffineWeylGroup, theta: &Twist) -> bool {
        self.elements.iter().all(|g| self.contains(&theta.apply_omega(group, g)))
    }

    pub fn require_stable(&self, group: &AffineWeylGroup, theta: &Twist) -> Result<()> {
        if self.is_stable(group, theta) {
            Ok(())
        } else {
            Err(Error::InvalidGamma("subgroup is not stable under the twist".into()))
        }
    }

    /// Length-zero representatives in `W` of the elements of the subgroup.
    pub fn representatives(&self, group: &AffineWeylGroup) -> Vec<AffineElement> {
        self.elements.iter().map(|o| group.omega_from_coords(&o.coords).unwrap()).collect()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        format!("<{}>", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{LatticeChoice, RootDatum};

    fn group(label: &str, lat: LatticeChoice) -> AffineWeylGroup {
        AffineWeylGroup::new(RootDatum::build(label, &lat).unwrap()).unwrap()
    }

    #[test]
    fn identity_twist() {
        let g = group("A2", LatticeChoice::adjoint());
        let t = Twist::identity(&g);
        assert_eq!(t.order(), 1);
        let x = AffineElement::translation(&[1, -2]);
        assert_eq!(t.apply(&g, &x), x);
    }

    #[test]
    fn product_swap() {
        let g = group("A1xA1", LatticeChoice::adjoint());
        let t = Twist::build(&g, &[1, 0], &[0, 0]).unwrap();
        assert_eq!(t.order(), 2);
        let x = AffineElement::translation(&[3, -1]);
        assert_eq!(t.apply(&g, &x), AffineElement::translation(&[-1, 3]));
    }

    #[test]
    fn rejects_bad_input() {
        let g = group("B2", LatticeChoice::adjoint());
        assert!(matches!(Twist::build(&g, &[1, 0], &[]), Err(Error::InvalidTwist(_))));
        assert!(matches!(Twist::build(&g, &[0, 0], &[]), Err(Error::InvalidTwist(_))));
        let g = group("A2", LatticeChoice::adjoint());
        assert!(matches!(Twist::build(&g, &[0, 1], &[0, 0]), Err(Error::InvalidTwist(_))));
    }

    #[test]
    fn twist_with_omega_part_has_finite_order() {
        let g = group("A2", LatticeChoice::adjoint());
        let t = Twist::build(&g, &[0, 1], &[1]).unwrap();
        assert_eq!(t.order(), 3);
        assert!(t.acts_trivially_on_omega(&g));
        let t = Twist::build(&g, &[1, 0], &[0]).unwrap();
        assert_eq!(t.order(), 2);
        // the diagram swap inverts Omega = Z/3
        let o = g.omega_normalize(&[1]);
        assert_eq!(t.apply_omega(&g, &o).coords, vec![2]);
    }

    #[test]
    fn gamma_subgroups() {
        let g = group("A1xA1", LatticeChoice::adjoint());
        let t = Twist::build(&g, &[1, 0], &[0, 0]).unwrap();
        let cyc = GammaSubgroup::cyclic_subgroups(&g);
        assert_eq!(cyc.len(), 4);
        let stable: Vec<_> = cyc.iter().filter(|c| c.is_stable(&g, &t)).collect();
        assert_eq!(stable.len(), 2);
        let diag = GammaSubgroup::generated(&g, &[vec![1, 1]]).unwrap();
        assert!(diag.is_stable(&g, &t));
        let first = GammaSubgroup::generated(&g, &[vec![1, 0]]).unwrap();
        assert!(first.require_stable(&g, &t).is_err());
    }
}
