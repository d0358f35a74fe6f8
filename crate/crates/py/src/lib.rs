//! Python bindings for the engine: algebras, enveloping-algebra elements
//! with their Hopf operations, and the dual product/coproduct, all exposed
//! through the same expression grammar and renderings as the CLI.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use trilie::dual::{dual_coproduct, dual_mul};
use trilie::enveloping::{mul, pbw_basis, Element as CoreElement};
use trilie::expr::{parse_dual, parse_element};
use trilie::hopf::{self, TensorElement};
use trilie::render::{
    render_dual, render_dual_tensor, render_element, render_element_machine, render_tensor,
    render_tensor_machine,
};
use trilie::structure::{builtin, AlgebraSpec, BUILTIN_NAMES};
use trilie::CycQ;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tab_pairs(machine: &str) -> Vec<(String, String)> {
    machine
        .lines()
        .filter_map(|line| {
            line.split_once('\t')
                .map(|(c, l)| (c.to_string(), l.to_string()))
        })
        .collect()
}

/// A validated-for-shape algebra: generator names and structure constants.
#[pyclass(module = "trilie_py")]
#[derive(Clone)]
struct Algebra {
    spec: AlgebraSpec,
}

#[pymethods]
impl Algebra {
    /// Look up one of the shipped algebras by name.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        builtin(name)
            .map(|spec| Algebra { spec })
            .ok_or_else(|| {
                value_err(format!(
                    "unknown builtin `{name}`; available: {}",
                    BUILTIN_NAMES.join(", ")
                ))
            })
    }

    #[staticmethod]
    fn builtin_names() -> Vec<String> {
        BUILTIN_NAMES.iter().map(|s| s.to_string()).collect()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        AlgebraSpec::from_json_str(text)
            .map(|spec| Algebra { spec })
            .map_err(value_err)
    }

    fn to_json(&self) -> String {
        self.spec.to_json_string()
    }

    #[getter]
    fn g0(&self) -> Vec<String> {
        self.spec.g0_names().to_vec()
    }

    #[getter]
    fn g1(&self) -> Vec<String> {
        self.spec.g1_names().to_vec()
    }

    /// Run the axiom checks; returns (all_passed, one line per check).
    fn validate(&self) -> (bool, Vec<String>) {
        let report = self.spec.validate();
        let lines = report.checks.iter().map(|c| c.to_string()).collect();
        (report.passed(), lines)
    }

    /// Parse an expression in the generators into an element.
    fn parse(&self, text: &str) -> PyResult<Element> {
        let inner = parse_element(text, &self.spec).map_err(value_err)?;
        Ok(Element { spec: self.spec.clone(), inner })
    }

    /// Normal-form monomial counts per total degree, 0..=degree.
    fn pbw_dimensions(&self, degree: usize) -> Vec<usize> {
        let basis = pbw_basis(&self.spec, degree);
        (0..=degree)
            .map(|k| basis.iter().filter(|m| m.degree() == k).count())
            .collect()
    }

    /// Coproduct axiom suite; returns (all_passed, one line per check).
    #[pyo3(signature = (degree = 3, pairs = 200, seed = 0x5eed_2026))]
    fn hopf_check(&self, degree: usize, pairs: usize, seed: u64) -> (bool, Vec<String>) {
        let outcomes = hopf::axiom_suite(&self.spec, degree, pairs, seed);
        let ok = outcomes.iter().all(|o| o.passed());
        (ok, outcomes.iter().map(|o| o.to_string()).collect())
    }

    /// Antipode probe over all normal-form monomials up to a degree.
    #[pyo3(signature = (degree = 3))]
    fn antipode_check(&self, degree: usize) -> (bool, String) {
        let outcome = hopf::check_antipode(&self.spec, degree);
        (outcome.passed(), outcome.to_string())
    }

    /// Product of two dual functionals, exact up to the cutoff.
    #[pyo3(signature = (f, g, cutoff = 4))]
    fn dual_mul(&self, f: &str, g: &str, cutoff: u32) -> PyResult<(String, u32)> {
        let f = parse_dual(f, &self.spec).map_err(value_err)?;
        let g = parse_dual(g, &self.spec).map_err(value_err)?;
        let result = dual_mul(&f, &g, &self.spec, cutoff);
        let shown = result.cutoff();
        Ok((render_dual(&result), shown))
    }

    /// Coproduct of a dual functional, exact up to the returned cutoff.
    #[pyo3(signature = (f, cutoff = 4))]
    fn dual_coproduct(&self, f: &str, cutoff: u32) -> PyResult<(String, u32)> {
        let f = parse_dual(f, &self.spec).map_err(value_err)?;
        let result = dual_coproduct(&f, &self.spec, cutoff);
        let shown = result.cutoff();
        Ok((render_dual_tensor(&result), shown))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.spec == other.spec
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(g0=[{}], g1=[{}])",
            self.spec.g0_names().join(", "),
            self.spec.g1_names().join(", ")
        )
    }
}

/// An element of the enveloping algebra in normal form.
#[pyclass(module = "trilie_py")]
#[derive(Clone)]
struct Element {
    spec: AlgebraSpec,
    inner: CoreElement,
}

impl Element {
    fn same_algebra(&self, other: &Self) -> PyResult<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(value_err("elements belong to different algebras"))
        }
    }
}

#[pymethods]
impl Element {
    fn __repr__(&self) -> String {
        render_element(&self.inner, &self.spec)
    }

    /// Sorted `coefficient TAB label` lines, one term per line.
    fn machine(&self) -> String {
        render_element_machine(&self.inner, &self.spec)
    }

    /// The terms as (coefficient, label) string pairs.
    fn terms(&self) -> Vec<(String, String)> {
        tab_pairs(&self.machine())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.spec == other.spec && self.inner == other.inner
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.same_algebra(other)?;
        Ok(Element { spec: self.spec.clone(), inner: &self.inner + &other.inner })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.same_algebra(other)?;
        Ok(Element { spec: self.spec.clone(), inner: &self.inner - &other.inner })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.same_algebra(other)?;
        Ok(Element {
            spec: self.spec.clone(),
            inner: mul(&self.inner, &other.inner, &self.spec),
        })
    }

    /// Multiply by a scalar written in the coefficient grammar, e.g. "-1/2" or "1+q".
    fn scaled(&self, c: &str) -> PyResult<Self> {
        let c = CycQ::parse(c).map_err(value_err)?;
        Ok(Element { spec: self.spec.clone(), inner: self.inner.scaled(&c) })
    }

    fn coproduct(&self) -> Tensor {
        Tensor {
            spec: self.spec.clone(),
            inner: hopf::coproduct(&self.inner, &self.spec),
        }
    }

    /// The coefficient of the empty monomial.
    fn counit(&self) -> String {
        hopf::counit(&self.inner).to_string()
    }

    fn antipode(&self) -> Self {
        Element {
            spec: self.spec.clone(),
            inner: hopf::antipode(&self.inner, &self.spec),
        }
    }

    /// Whether Δu = u⊗1 + 1⊗u.
    fn is_primitive(&self) -> bool {
        hopf::check_primitive(&self.inner, &self.spec)
    }
}

/// An element of the twisted tensor square, as produced by the coproduct.
#[pyclass(module = "trilie_py")]
#[derive(Clone)]
struct Tensor {
    spec: AlgebraSpec,
    inner: TensorElement,
}

#[pymethods]
impl Tensor {
    fn __repr__(&self) -> String {
        render_tensor(&self.inner, &self.spec)
    }

    fn machine(&self) -> String {
        render_tensor_machine(&self.inner, &self.spec)
    }

    /// The terms as (coefficient, "left ⊗ right") string pairs.
    fn terms(&self) -> Vec<(String, String)> {
        tab_pairs(&self.machine())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.spec == other.spec && self.inner == other.inner
    }
}

/// Number of rise-free words of length k over d letters (rise length n).
#[pyfunction]
fn roby_dim(d: usize, n: usize, k: usize) -> u128 {
    trilie::exterior::roby_dim(d, n, k)
}

/// The rise-free words themselves, as lists of 1-based letters.
#[pyfunction]
fn roby_basis(d: usize, n: usize, k: usize) -> Vec<Vec<u32>> {
    trilie::exterior::roby_basis(d, n, k)
        .into_iter()
        .map(|s| s.0.iter().map(|&letter| letter as u32).collect())
        .collect()
}

#[pymodule]
fn trilie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Element>()?;
    m.add_class::<Tensor>()?;
    m.add_function(wrap_pyfunction!(roby_dim, m)?)?;
    m.add_function(wrap_pyfunction!(roby_basis, m)?)?;
    Ok(())
}
