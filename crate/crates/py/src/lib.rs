//! Python bindings: groups, twists, elements, fixed subgroups and the window
//! verifiers.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use strata_core::config::{RunConfig, Setup};
use strata_core::conjugacy::Twisted;
use strata_core::linalg::Q;
use strata_core::{AffineElement, AffineWeylGroup, Error, LatticeChoice, RootDatum};

fn err(e: Error) -> PyErr {
    match e {
        Error::ResourceCap(_) | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fractions<'py>(py: Python<'py>, v: &[Q]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let frac = py.import("fractions")?.getattr("Fraction")?;
    v.iter().map(|x| frac.call1((*x.numer(), *x.denom()))).collect()
}

fn same_group(a: &Arc<AffineWeylGroup>, b: &Arc<AffineWeylGroup>) -> PyResult<()> {
    let same = Arc::ptr_eq(a, b) || a.datum.cartan == b.datum.cartan && a.datum.lattice_basis == b.datum.lattice_basis;
    if same {
        Ok(())
    } else {
        Err(PyValueError::new_err("element belongs to a different group"))
    }
}

fn json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// An element `t^lambda w` of an extended affine Weyl group.
#[pyclass(frozen, module = "strata")]
struct Element {
    inner: AffineElement,
    group: Arc<AffineWeylGroup>,
}

#[pymethods]
impl Element {
    /// Translation part in fundamental coweight coordinates.
    #[getter]
    fn translation(&self) -> Vec<i64> {
        self.group.lambda(&self.inner)
    }

    /// Reduced word of the finite part, as simple reflection indices from 1.
    #[getter]
    fn finite_word(&self) -> Vec<usize> {
        self.group.datum.weyl.word(self.inner.w).iter().map(|i| i + 1).collect()
    }

    fn __repr__(&self) -> String {
        self.group.format_element(&self.inner)
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

/// Extended affine Weyl group of a root datum.
#[pyclass(frozen, module = "strata")]
struct Group {
    inner: Arc<AffineWeylGroup>,
}

impl Group {
    fn wrap(&self, x: AffineElement) -> Element {
        Element { inner: x, group: self.inner.clone() }
    }

    fn check(&self, x: &Element) -> PyResult<()> {
        same_group(&self.inner, &x.group)
    }

    fn twisted<'a>(&'a self, twist: Option<&'a Twist>, id: &'a strata_core::Twist) -> PyResult<Twisted<'a, AffineWeylGroup>> {
        if let Some(t) = twist {
            same_group(&self.inner, &t.group)?;
        }
        Twisted::new(&*self.inner, twist.map(|t| &t.inner).unwrap_or(id)).map_err(err)
    }
}

#[pymethods]
impl Group {
    /// `lattice` is "simply_connected", "adjoint" or a list of basis rows in
    /// fundamental coweight coordinates.
    #[new]
    #[pyo3(signature = (cartan_type, lattice = None))]
    fn new(cartan_type: &str, lattice: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let choice = match lattice {
            None => LatticeChoice::simply_connected(),
            Some(l) => match l.extract::<String>() {
                Ok(name) => lattice_named(&name)?,
                Err(_) => LatticeChoice::Basis { basis: l.extract()? },
            },
        };
        let datum = RootDatum::build(cartan_type, &choice).map_err(err)?;
        Ok(Self { inner: Arc::new(AffineWeylGroup::new(datum).map_err(err)?) })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn omega_order(&self) -> usize {
        self.inner.omega_order()
    }

    fn identity(&self) -> Element {
        self.wrap(AffineElement::IDENTITY)
    }

    fn simple_reflections(&self) -> Vec<Element> {
        self.inner.simple_reflections().iter().map(|x| self.wrap(*x)).collect()
    }

    fn translation(&self, coords: Vec<i64>) -> PyResult<Element> {
        if coords.len() != self.inner.rank() || !self.inner.datum.in_lattice(&coords) {
            return Err(PyValueError::new_err(format!("{coords:?} is not in the cocharacter lattice")));
        }
        Ok(self.wrap(AffineElement::translation(&coords)))
    }

    /// Length-zero elements, in the order of their `kappa` coordinates.
    fn omega_elements(&self) -> Vec<Element> {
        self.inner.omega_elements().iter().map(|x| self.wrap(*x)).collect()
    }

    fn omega_element(&self, coords: Vec<i64>) -> PyResult<Element> {
        Ok(self.wrap(self.inner.omega_from_coords(&coords).map_err(err)?))
    }

    fn multiply(&self, x: &Element, y: &Element) -> PyResult<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.inner.multiply(&x.inner, &y.inner)))
    }

    fn inverse(&self, x: &Element) -> PyResult<Element> {
        self.check(x)?;
        Ok(self.wrap(self.inner.inverse(&x.inner)))
    }

    fn length(&self, x: &Element) -> PyResult<u32> {
        self.check(x)?;
        Ok(self.inner.length(&x.inner))
    }

    /// Image in `Omega`, as coordinates modulo the invariant factors.
    fn kappa(&self, x: &Element) -> PyResult<Vec<i64>> {
        self.check(x)?;
        Ok(self.inner.kappa(&x.inner).coords)
    }

    /// Elements of length at most `bound`, grouped by length.
    #[pyo3(signature = (bound, max_elements = 2_000_000))]
    fn enumerate(&self, bound: u32, max_elements: usize) -> PyResult<Vec<Vec<Element>>> {
        let levels = self.inner.enumerate_by_length(bound, max_elements).map_err(err)?;
        Ok(levels.into_iter().map(|l| l.into_iter().map(|x| self.wrap(x)).collect()).collect())
    }

    #[pyo3(signature = (x, twist = None))]
    fn newton_point<'py>(&self, py: Python<'py>, x: &Element, twist: Option<&Twist>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.check(x)?;
        let id = strata_core::Twist::identity(&self.inner);
        fractions(py, &self.twisted(twist, &id)?.newton_point(&x.inner))
    }

    #[pyo3(signature = (x, twist = None))]
    fn dominant_newton<'py>(&self, py: Python<'py>, x: &Element, twist: Option<&Twist>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.check(x)?;
        let id = strata_core::Twist::identity(&self.inner);
        fractions(py, &self.twisted(twist, &id)?.dominant_newton(&x.inner))
    }

    #[pyo3(signature = (x, twist = None))]
    fn is_straight(&self, x: &Element, twist: Option<&Twist>) -> PyResult<bool> {
        self.check(x)?;
        let id = strata_core::Twist::identity(&self.inner);
        Ok(self.twisted(twist, &id)?.is_straight(&x.inner))
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, rank={}, omega_order={})", self.inner.datum.cartan_type.to_string(), self.rank(), self.omega_order())
    }
}

fn lattice_named(name: &str) -> PyResult<LatticeChoice> {
    match name {
        "simply_connected" => Ok(LatticeChoice::simply_connected()),
        "adjoint" => Ok(LatticeChoice::adjoint()),
        other => Err(PyValueError::new_err(format!("unknown lattice `{other}`"))),
    }
}

/// Length-preserving automorphism `Ad(omega) ∘ (diagram automorphism)`.
#[pyclass(frozen, module = "strata")]
struct Twist {
    inner: strata_core::Twist,
    group: Arc<AffineWeylGroup>,
}

#[pymethods]
impl Twist {
    #[new]
    #[pyo3(signature = (group, diagram_perm, omega = Vec::new()))]
    fn new(group: &Group, diagram_perm: Vec<usize>, omega: Vec<i64>) -> PyResult<Self> {
        let inner = strata_core::Twist::build(&group.inner, &diagram_perm, &omega).map_err(err)?;
        Ok(Self { inner, group: group.inner.clone() })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Permutation induced on the affine simple reflections.
    #[getter]
    fn simple_permutation(&self) -> Vec<usize> {
        self.inner.simple_permutation().to_vec()
    }

    fn apply(&self, x: &Element) -> PyResult<Element> {
        same_group(&self.group, &x.group)?;
        Ok(Element { inner: self.inner.apply(&self.group, &x.inner), group: self.group.clone() })
    }

    /// `g x theta(g)^{-1}`.
    fn conjugate(&self, g: &Element, x: &Element) -> PyResult<Element> {
        same_group(&self.group, &g.group)?;
        same_group(&self.group, &x.group)?;
        Ok(Element { inner: self.inner.twisted_conjugate(&self.group, &g.inner, &x.inner), group: self.group.clone() })
    }
}

/// Subgroup of elements commuting with a twist, with its own Coxeter structure.
#[pyclass(frozen, module = "strata")]
struct FixedSubgroup {
    inner: strata_core::FixedSubgroup,
    group: Arc<AffineWeylGroup>,
}

#[pymethods]
impl FixedSubgroup {
    #[new]
    fn new(twist: &Twist) -> PyResult<Self> {
        let inner = strata_core::FixedSubgroup::new(&twist.group, &twist.inner).map_err(err)?;
        Ok(Self { inner, group: twist.group.clone() })
    }

    /// Fixed subspace of the apartment in simple coroot coordinates.
    #[getter]
    fn subspace(&self) -> String {
        self.inner.apartment.describe()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.apartment.dimension()
    }

    fn generators(&self) -> Vec<Element> {
        self.inner.generators().iter().map(|x| Element { inner: *x, group: self.group.clone() }).collect()
    }

    #[getter]
    fn relative_omega_order(&self) -> usize {
        self.inner.relative_omega().len()
    }

    fn is_fixed(&self, x: &Element) -> PyResult<bool> {
        same_group(&self.group, &x.group)?;
        Ok(self.inner.is_fixed(&x.inner))
    }

    fn relative_length(&self, x: &Element) -> PyResult<u32> {
        same_group(&self.group, &x.group)?;
        if !self.inner.is_fixed(&x.inner) {
            return Err(PyValueError::new_err("element is not fixed by the twist"));
        }
        Ok(self.inner.relative_length(&x.inner))
    }

    fn figure(&self) -> PyResult<String> {
        strata_core::figure::render_svg(&self.inner).map_err(err)
    }
}

/// A parsed JSON run configuration.
#[pyclass(frozen, module = "strata")]
struct Config {
    setup: Setup,
}

#[pymethods]
impl Config {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let cfg = RunConfig::from_json(text).map_err(err)?;
        Ok(Self { setup: cfg.build().map_err(err)? })
    }

    #[getter]
    fn length_bound(&self) -> u32 {
        self.setup.bound
    }

    fn group(&self) -> Group {
        Group { inner: Arc::new(self.setup.group.clone()) }
    }

    /// Straight classes of the window as a dict with a `classes` list.
    #[pyo3(signature = (bound = None))]
    fn straight_classes<'py>(&self, py: Python<'py>, bound: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
        let table = self.setup.class_table(bound.unwrap_or(self.setup.bound)).map_err(err)?;
        json(py, &table.to_json())
    }

    /// Run a verifier; returns the report as a dict.
    #[pyo3(signature = (theorem, bound = None))]
    fn verify<'py>(&self, py: Python<'py>, theorem: &str, bound: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
        let rep = self.setup.verify(theorem, bound.unwrap_or(self.setup.bound)).map_err(err)?;
        json(py, &rep.to_json())
    }
}

/// The three worked examples as `(name, text)` pairs.
#[pyfunction]
fn examples(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let ex = strata_core::catalog::worked_examples().map_err(err)?;
    PyList::new(py, ex.into_iter().map(|(n, t)| (n.to_string(), t)))
}

/// Built-in configurations as `(name, json)` pairs.
#[pyfunction]
fn catalog() -> Vec<(String, String)> {
    strata_core::catalog::catalog()
        .into_iter()
        .map(|(n, c)| (n.to_string(), c.to_json()))
        .collect()
}

#[pymodule]
fn strata(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Element>()?;
    m.add_class::<Group>()?;
    m.add_class::<Twist>()?;
    m.add_class::<FixedSubgroup>()?;
    m.add_class::<Config>()?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}
