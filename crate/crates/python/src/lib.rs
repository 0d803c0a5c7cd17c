//! Python bindings: groups, covers, the cyclic-chain family and the
//! resolution tracker. Structured reports come back as plain dicts.

use std::collections::BTreeMap;

use coverkit_core::base::{Dim, NSClass, NumericalBase};
use coverkit_core::config::CoverConfig;
use coverkit_core::construction::{prop66_report, C62Params};
use coverkit_core::cover::CoverData;
use coverkit_core::deformations::{
    cstar_weights, moduli_dimension, predict_generic_automorphisms, tangent_table, InvariantDims,
};
use coverkit_core::emitter::{Flavor, RelationSystem};
use coverkit_core::group::{Character, FinAbGroup, GroupElement, InertiaDatum};
use coverkit_core::invariants::{cover_invariants, hurwitz_genus as hurwitz};
use coverkit_core::rational::{self, render};
use coverkit_core::resolution::{self, Case};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: coverkit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn dim_to_option(d: Dim) -> Option<i64> {
    d.known()
}

#[pyclass(name = "Group", module = "coverkit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: FinAbGroup,
}

impl PyGroup {
    fn datum(&self, generator: Vec<i64>) -> PyResult<InertiaDatum> {
        self.inner.inertia_from(&generator).map_err(err)
    }

    fn character(&self, exponents: Vec<i64>) -> PyResult<Character> {
        self.inner.character(&exponents).map_err(err)
    }
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(factors: Vec<i64>) -> PyResult<Self> {
        Ok(PyGroup { inner: FinAbGroup::new(factors).map_err(err)? })
    }

    #[getter]
    fn factors(&self) -> Vec<i64> {
        self.inner.factors().to_vec()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn elements(&self) -> Vec<Vec<i64>> {
        self.inner.elements().into_iter().map(|g| g.coords).collect()
    }

    fn characters(&self) -> Vec<Vec<i64>> {
        self.inner.characters().into_iter().map(|c| c.exponents).collect()
    }

    /// `(generator, order)` for every nonzero element.
    fn inertia_set(&self) -> Vec<(Vec<i64>, i64)> {
        self.inner.enumerate_ig().into_iter().map(|d| (d.generator.coords, d.order)).collect()
    }

    /// `χ(g)` as a `p/q` string.
    fn pairing(&self, character: Vec<i64>, element: Vec<i64>) -> PyResult<String> {
        let chi = self.character(character)?;
        let g = self.inner.element(&element).map_err(err)?;
        Ok(render(&self.inner.pairing(&chi, &g)))
    }

    fn r_coeff(&self, generator: Vec<i64>, character: Vec<i64>) -> PyResult<i64> {
        Ok(self.inner.r_coeff(&self.datum(generator)?, &self.character(character)?))
    }

    fn eps_coeff(&self, generator: Vec<i64>, a: Vec<i64>, b: Vec<i64>) -> PyResult<i64> {
        Ok(self.inner.eps_coeff(&self.datum(generator)?, &self.character(a)?, &self.character(b)?))
    }

    fn is_surjective(&self, generators: Vec<Vec<i64>>) -> PyResult<bool> {
        let data = generators.into_iter().map(|g| self.datum(g)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.surjectivity_check(&data))
    }

    fn has_full_rank(&self, generators: Vec<Vec<i64>>) -> PyResult<bool> {
        let data = generators.into_iter().map(|g| self.datum(g)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.rank_check(&data))
    }

    /// Elements killed by every listed character.
    fn kernel(&self, characters: Vec<Vec<i64>>) -> PyResult<Vec<Vec<i64>>> {
        let chars = characters.into_iter().map(|c| self.character(c)).collect::<PyResult<Vec<_>>>()?;
        let refs: Vec<&Character> = chars.iter().collect();
        Ok(self.inner.kernel(&refs).elements.into_iter().map(|g: GroupElement| g.coords).collect())
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.inner)
    }
}

#[pyclass(name = "Cover", module = "coverkit", frozen, skip_from_py_object)]
struct PyCover {
    inner: CoverData,
    config: Option<CoverConfig>,
}

#[pymethods]
impl PyCover {
    /// Cover over a preset base with the default intersection pattern.
    #[new]
    fn new(group: Vec<i64>, inertia: Vec<Vec<i64>>, base: &str, branch: Vec<Vec<i64>>) -> PyResult<Self> {
        let g = FinAbGroup::new(group).map_err(err)?;
        let data = inertia.iter().map(|c| g.inertia_from(c)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let base = NumericalBase::preset(base).ok_or_else(|| PyValueError::new_err(format!("unknown preset {base}")))?;
        let cd = CoverData::new(g, data, base, branch.into_iter().map(NSClass).collect()).map_err(err)?;
        Ok(PyCover { inner: cd, config: None })
    }

    /// Cover from a JSON description (the CLI input format).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let cfg = CoverConfig::from_json(text).map_err(err)?;
        let cd = cfg.cover().map_err(err)?;
        Ok(PyCover { inner: cd, config: Some(cfg) })
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup { inner: self.inner.group().clone() }
    }

    #[getter]
    fn reduced(&self) -> Vec<Vec<i64>> {
        self.inner.reduced().iter().map(|c| c.0.clone()).collect()
    }

    fn check_relations(&self) -> bool {
        self.inner.check_fundamental_relations().is_ok()
    }

    /// Néron–Severi class of `L_χ`.
    fn eigensheaf_class(&self, character: Vec<i64>) -> PyResult<Vec<i64>> {
        let chi = self.inner.group().character(&character).map_err(err)?;
        Ok(self.inner.derive_l_chi(&chi).0)
    }

    fn smoothness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.smoothness_audit())
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &cover_invariants(&self.inner).map_err(err)?)
    }

    /// Deformation table; `h1`, `h2` are the invariant-part dimensions.
    #[pyo3(signature = (h1=None, h2=None))]
    fn deformations<'py>(&self, py: Python<'py>, h1: Option<i64>, h2: Option<i64>) -> PyResult<Bound<'py, PyAny>> {
        let dims = match (h1, h2, self.config.as_ref().and_then(|c| c.invariant_dims)) {
            (None, None, Some(d)) => d,
            (a, b, _) => InvariantDims {
                h1: a.map_or(Dim::Unknown, Dim::Known),
                h2: b.map_or(Dim::Unknown, Dim::Known),
            },
        };
        to_py(py, &tangent_table(&self.inner, dims))
    }

    /// Order of the predicted generic automorphism group, or `None` when a
    /// tangent dimension is unknown.
    fn predicted_automorphism_order(&self) -> Option<usize> {
        let report = tangent_table(&self.inner, InvariantDims::default());
        predict_generic_automorphisms(&self.inner, &report).ok().map(|p| p.subgroup.order())
    }

    fn weights<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &cstar_weights(&self.inner))
    }

    #[pyo3(signature = (aut_dim=None))]
    fn moduli_dimension(&self, aut_dim: Option<i64>) -> Option<i64> {
        dim_to_option(moduli_dimension(&self.inner, aut_dim).total)
    }

    #[pyo3(signature = (flavor="plain", galois=false))]
    fn emit(&self, flavor: &str, galois: bool) -> PyResult<String> {
        let flavor: Flavor = flavor.parse().map_err(err)?;
        Ok(RelationSystem::from_cover(&self.inner, galois).emit(flavor))
    }

    /// `(length, distinct points)` of the fibre at the given parameter values
    /// (`p/q` strings keyed by plain parameter name).
    #[pyo3(signature = (values, galois=false))]
    fn fibre_counts(&self, values: BTreeMap<String, String>, galois: bool) -> PyResult<(usize, usize)> {
        let parsed = values
            .into_iter()
            .map(|(k, v)| {
                rational::parse(&v)
                    .map(|r| (k.clone(), r))
                    .ok_or_else(|| PyValueError::new_err(format!("{k}: not a rational: {v}")))
            })
            .collect::<PyResult<Vec<_>>>()?;
        let r = RelationSystem::from_cover(&self.inner, galois).flatness_smoke_test(&parsed).map_err(err)?;
        Ok((r.length, r.distinct_points))
    }

    fn __repr__(&self) -> String {
        format!("Cover({} over {}, {} branch divisors)", self.inner.group(), self.inner.base().name, self.inner.branch().len())
    }
}

#[pyfunction]
fn hurwitz_genus(base_genus: i64, group: Vec<i64>, inertia: Vec<Vec<i64>>, branch_points: Vec<i64>) -> PyResult<i64> {
    let g = FinAbGroup::new(group).map_err(err)?;
    let data = inertia.iter().map(|c| g.inertia_from(c)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    hurwitz(base_genus, &g, &data, &branch_points).map_err(err)
}

/// Predicted group orders on each marker locus of the cyclic-chain family.
#[pyfunction]
#[pyo3(signature = (d, xi, base="abelian_pp"))]
fn classify_components<'py>(py: Python<'py>, d: Vec<i64>, xi: Vec<i64>, base: &str) -> PyResult<Bound<'py, PyAny>> {
    let base = NumericalBase::preset(base).ok_or_else(|| PyValueError::new_err(format!("unknown preset {base}")))?;
    let rows = C62Params::new(d).and_then(|p| p.classify_components(&base, &NSClass(xi))).map_err(err)?;
    to_py(py, &rows)
}

#[pyfunction]
fn prop66<'py>(py: Python<'py>, n: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &prop66_report(n).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (n, case="h-unit"))]
fn resolution_trace<'py>(py: Python<'py>, n: u32, case: &str) -> PyResult<Bound<'py, PyAny>> {
    let case: Case = case.parse().map_err(err)?;
    to_py(py, &resolution::trace(n, case).map_err(err)?)
}

/// `(traces, divisors, all negative)` for `2 ≤ n ≤ n_max`.
#[pyfunction]
fn verify_traces(n_max: u32) -> PyResult<(usize, usize, bool)> {
    let s = resolution::verify_all(n_max).map_err(err)?;
    Ok((s.trace_count, s.divisor_count, s.all_negative))
}

#[pyfunction]
fn conic_value(r: i64) -> String {
    render(&resolution::conic_value(r))
}

#[pymodule]
#[pyo3(name = "coverkit")]
pub fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCover>()?;
    m.add_function(wrap_pyfunction!(hurwitz_genus, m)?)?;
    m.add_function(wrap_pyfunction!(classify_components, m)?)?;
    m.add_function(wrap_pyfunction!(prop66, m)?)?;
    m.add_function(wrap_pyfunction!(resolution_trace, m)?)?;
    m.add_function(wrap_pyfunction!(verify_traces, m)?)?;
    m.add_function(wrap_pyfunction!(conic_value, m)?)?;
    Ok(())
}
