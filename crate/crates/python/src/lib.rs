//! Python module `linext_py`. Rationals cross the boundary as strings:
//! points may hold ints, `Fraction`s or strings, anything whose `str()`
//! parses as a rational.

use linext::catalog;
use linext::extreal::{format_rational, parse_rational};
use linext::grid::farey_simplex;
use linext::linext::check_axioms_seeded;
use linext::precision::DEFAULT_DIGITS;
use linext::scoring::{self, dists, Dist};
use linext::{AffExt, OutcomeSet, Polytope, RatVec};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point(items: &[Bound<'_, PyAny>]) -> PyResult<RatVec> {
    let coords = items
        .iter()
        .map(|item| parse_rational(&item.str()?.to_string()).map_err(py_err))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(RatVec::new(coords))
}

fn strings(v: &RatVec) -> Vec<String> {
    v.coords().iter().map(format_rational).collect()
}

#[pyclass(name = "LinExt", module = "linext_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLinExt(linext::LinExt);

#[pymethods]
impl PyLinExt {
    #[new]
    fn new(dim: usize, dirs: Vec<Vec<Bound<'_, PyAny>>>, tail: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let dirs = dirs.iter().map(|d| point(d)).collect::<PyResult<Vec<_>>>()?;
        linext::LinExt::new(dim, dirs, point(&tail)?).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(py_err)
    }

    /// `−∞` on the convex hull of `vertices`, which must avoid the origin.
    #[staticmethod]
    fn indicator_neg_on(vertices: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let vs = vertices.iter().map(|v| point(v)).collect::<PyResult<Vec<_>>>()?;
        let p = Polytope::new(vs).map_err(py_err)?;
        linext::LinExt::indicator_neg_on(&p).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    #[getter]
    fn dirs(&self) -> Vec<Vec<String>> {
        self.0.dirs().iter().map(strings).collect()
    }

    #[getter]
    fn tail(&self) -> Vec<String> {
        strings(self.0.tail())
    }

    /// `"inf"`, `"-inf"` or an exact rational string.
    fn eval(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        Ok(self.0.eval(&point(&x)?).map_err(py_err)?.to_string())
    }

    /// `"plus"`, `"minus"` or `"finite"`.
    fn classify(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        Ok(self.0.classify(&point(&x)?).map_err(py_err)?.to_string())
    }

    fn equals(&self, other: &PyLinExt) -> PyResult<bool> {
        self.0.equals(&other.0).map_err(py_err)
    }

    #[pyo3(signature = (trials = 1000, seed = 0))]
    fn check_axioms(&self, trials: usize, seed: u64) -> PyResult<bool> {
        Ok(check_axioms_seeded(&self.0, &[], trials, seed).map_err(py_err)?.passed())
    }

    fn __eq__(&self, other: &PyLinExt) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("LinExt({})", self.0)
    }
}

#[pyclass(name = "AffExt", module = "linext_py", frozen)]
struct PyAffExt(AffExt);

#[pymethods]
impl PyAffExt {
    #[new]
    fn new(f: &PyLinExt, anchor: Vec<Bound<'_, PyAny>>, offset: Bound<'_, PyAny>) -> PyResult<Self> {
        let offset = parse_rational(&offset.str()?.to_string()).map_err(py_err)?;
        AffExt::new(f.0.clone(), point(&anchor)?, offset).map(Self).map_err(py_err)
    }

    #[getter]
    fn f(&self) -> PyLinExt {
        PyLinExt(self.0.f().clone())
    }

    #[getter]
    fn anchor(&self) -> Vec<String> {
        strings(self.0.anchor())
    }

    #[getter]
    fn offset(&self) -> String {
        format_rational(self.0.offset())
    }

    fn eval(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        Ok(self.0.eval(&point(&x)?).map_err(py_err)?.to_string())
    }

    fn rebase(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        self.0.rebase(&point(&x)?).map(Self).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("AffExt({})", self.0)
    }
}

#[pyclass(name = "ScoreTable", module = "linext_py", frozen)]
struct PyScoreTable(linext::ScoreTable);

#[pymethods]
impl PyScoreTable {
    /// Subtangent rule of a catalog entry on its Farey grid.
    #[staticmethod]
    #[pyo3(signature = (name, outcomes = 2, grid_denominator = 16, precision = DEFAULT_DIGITS))]
    fn build(name: &str, outcomes: usize, grid_denominator: u32, precision: u32) -> PyResult<Self> {
        let (entry, outcomes, grid) = entry_grid(name, outcomes, grid_denominator, precision)?;
        scoring::subtangent_rule(&entry.spec, &outcomes, &grid).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(py_err)
    }

    #[pyo3(signature = (digits = DEFAULT_DIGITS))]
    fn to_csv(&self, digits: u32) -> PyResult<String> {
        self.0.to_csv(digits).map_err(py_err)
    }

    #[getter]
    fn regular(&self) -> bool {
        self.0.is_regular()
    }

    #[getter]
    fn outcomes(&self) -> Vec<String> {
        self.0.outcomes().labels().to_vec()
    }

    #[getter]
    fn preds(&self) -> Vec<Vec<String>> {
        self.0.preds().iter().map(|p| strings(p.probs())).collect()
    }

    fn score(&self, pred: Vec<Bound<'_, PyAny>>, label: &str) -> PyResult<String> {
        let p = Dist::new(point(&pred)?).map_err(py_err)?;
        Ok(self.0.get(&p, label).map_err(py_err)?.to_string())
    }

    fn expected_score(&self, pred: Vec<Bound<'_, PyAny>>, belief: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        let p = Dist::new(point(&pred)?).map_err(py_err)?;
        let q = Dist::new(point(&belief)?).map_err(py_err)?;
        Ok(scoring::expected_score(&self.0, &p, &q).map_err(py_err)?.to_string())
    }

    /// The extended expected score of a prediction, as a linear extended function.
    fn expected_score_function(&self, pred: Vec<Bound<'_, PyAny>>) -> PyResult<PyLinExt> {
        let p = Dist::new(point(&pred)?).map_err(py_err)?;
        scoring::extended_expected_score(&self.0, &p).map(PyLinExt).map_err(py_err)
    }

    /// Summary line such as `"strictly-proper-on-grid"`.
    fn verify_properness(&self) -> PyResult<String> {
        Ok(scoring::verify_properness(&self.0).map_err(py_err)?.summary())
    }

    /// `g(q) = sup_p S_p(q)` at each prediction.
    fn reconstruct(&self) -> PyResult<Vec<String>> {
        let g = scoring::savage_reconstruct(&self.0).map_err(py_err)?;
        self.0
            .preds()
            .iter()
            .map(|p| Ok(g.eval(p.probs()).map_err(py_err)?.to_string()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "ScoreTable(outcomes={}, preds={}, regular={})",
            self.0.outcomes().len(),
            self.0.preds().len(),
            self.0.is_regular()
        )
    }
}

fn entry_grid(
    name: &str,
    outcomes: usize,
    grid_denominator: u32,
    precision: u32,
) -> PyResult<(catalog::CatalogEntry, OutcomeSet, Vec<Dist>)> {
    let outcomes = OutcomeSet::numbered(outcomes).map_err(py_err)?;
    let entry = catalog::by_name(name, &outcomes, precision).map_err(py_err)?;
    let mut points = Vec::new();
    for q in farey_simplex(outcomes.len(), grid_denominator) {
        if entry.spec.in_domain(&q).map_err(py_err)? {
            points.push(q);
        }
    }
    let grid = dists(points).map_err(py_err)?;
    Ok((entry, outcomes, grid))
}

/// Summary line such as `"certified"` or `"fails-at p=(1/4,3/4)"`.
#[pyfunction]
#[pyo3(signature = (name, outcomes = 2, grid_denominator = 16, precision = DEFAULT_DIGITS))]
fn ill_certificate(name: &str, outcomes: usize, grid_denominator: u32, precision: u32) -> PyResult<String> {
    let (entry, _, grid) = entry_grid(name, outcomes, grid_denominator, precision)?;
    Ok(scoring::ill_certificate(&entry.spec, &grid).map_err(py_err)?.summary())
}

/// Value of a catalog function at a point.
#[pyfunction]
#[pyo3(signature = (name, x, outcomes = 2, precision = DEFAULT_DIGITS))]
fn catalog_eval(name: &str, x: Vec<Bound<'_, PyAny>>, outcomes: usize, precision: u32) -> PyResult<String> {
    let outcomes = OutcomeSet::numbered(outcomes).map_err(py_err)?;
    let entry = catalog::by_name(name, &outcomes, precision).map_err(py_err)?;
    Ok(entry.spec.eval(&point(&x)?).map_err(py_err)?.to_string())
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog::NAMES.to_vec()
}

#[pymodule]
fn linext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLinExt>()?;
    m.add_class::<PyAffExt>()?;
    m.add_class::<PyScoreTable>()?;
    m.add_function(wrap_pyfunction!(ill_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_eval, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    Ok(())
}
