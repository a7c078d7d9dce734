//! Python bindings for the `digroup` library.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use digroup::cayley;
use digroup::digroup::is_isomorphism;
use digroup::enumerate::{self, Catalog};
use digroup::io::{self, DgtFile, PermNotation, TdsFile};
use digroup::report::ReportDocument;
use digroup::transform::{LMap, TransDigroupSpec};
use digroup::{Digroup, OpTable, Permutation};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn table(rows: Vec<Vec<usize>>) -> PyResult<OpTable> {
    OpTable::from_rows(&rows).map_err(value_err)
}

fn rows(t: &OpTable) -> Vec<Vec<usize>> {
    t.rows().map(<[usize]>::to_vec).collect()
}

fn notation(cycles: bool) -> PermNotation {
    if cycles {
        PermNotation::Cycles
    } else {
        PermNotation::OneLine
    }
}

/// An l-map as `(s, images of f)`.
type LMapTuple = (usize, Vec<usize>);

type CrossCheckTuple = (bool, usize, usize, Vec<(usize, usize)>);

fn lmap_tuple(l: &LMap) -> LMapTuple {
    (l.s, l.f.images().to_vec())
}

/// Outcome of checking two tables against the digroup axioms.
#[pyclass(name = "ValidationReport", frozen, get_all)]
struct PyValidationReport {
    valid: bool,
    /// `(law, witness)` pairs, e.g. `("1.1b", "(0,1,0)")`.
    violations: Vec<(String, String)>,
    halo: Vec<usize>,
}

#[pymethods]
impl PyValidationReport {
    fn __repr__(&self) -> String {
        format!(
            "ValidationReport(valid={}, violations={:?})",
            self.valid, self.violations
        )
    }
}

#[pyfunction]
fn validate(left: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> PyResult<PyValidationReport> {
    let report = digroup::validate_digroup(&table(left)?, &table(right)?).map_err(value_err)?;
    Ok(PyValidationReport {
        valid: report.valid,
        violations: report
            .violations
            .iter()
            .map(|v| (v.law.id().to_string(), v.witness.to_string()))
            .collect(),
        halo: report.halo,
    })
}

/// A finite digroup given by its two Cayley tables.
#[pyclass(name = "Digroup", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyDigroup {
    inner: Digroup,
}

impl From<Digroup> for PyDigroup {
    fn from(inner: Digroup) -> Self {
        PyDigroup { inner }
    }
}

#[pymethods]
impl PyDigroup {
    #[new]
    fn new(left: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> PyResult<Self> {
        Digroup::new(table(left)?, table(right)?)
            .map(Self::from)
            .map_err(value_err)
    }

    #[staticmethod]
    fn cyclic(n: usize) -> PyResult<Self> {
        Digroup::cyclic(n).map(Self::from).map_err(value_err)
    }

    #[staticmethod]
    fn projection(n: usize) -> PyResult<Self> {
        Digroup::projection(n).map(Self::from).map_err(value_err)
    }

    /// Parses `.dgt` text.
    #[staticmethod]
    fn from_dgt(text: &str) -> PyResult<Self> {
        let file = io::parse_dgt(text).map_err(value_err)?;
        file.into_digroup().map(Self::from).map_err(value_err)
    }

    fn to_dgt(&self) -> String {
        io::format_dgt(&DgtFile::from_digroup(&self.inner))
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn left(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner.left(x, y))
    }

    fn right(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner.right(x, y))
    }

    fn left_table(&self) -> Vec<Vec<usize>> {
        rows(self.inner.left_table())
    }

    fn right_table(&self) -> Vec<Vec<usize>> {
        rows(self.inner.right_table())
    }

    fn halo(&self) -> Vec<usize> {
        self.inner.halo().to_vec()
    }

    fn identities(&self) -> Vec<usize> {
        self.inner.identities()
    }

    /// `(target_center, source_center)`.
    fn centers(&self) -> (Vec<usize>, Vec<usize>) {
        let c = self.inner.centers();
        (c.target, c.source)
    }

    /// `(left_inverse, right_inverse)` of `x` with respect to the bar-unit `alpha`.
    fn inverses(&self, x: usize, alpha: usize) -> PyResult<(usize, usize)> {
        let p = self.inner.inverses(x, alpha).map_err(value_err)?;
        Ok((p.left_inv, p.right_inv))
    }

    fn is_subdigroup(&self, subset: Vec<usize>) -> PyResult<bool> {
        self.inner.is_subdigroup(&subset).map_err(value_err)
    }

    fn all_subdigroups(&self) -> PyResult<Vec<Vec<usize>>> {
        self.inner.all_subdigroups().map_err(value_err)
    }

    fn fiber_partition(&self, e: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.inner.fiber_partition(e).map_err(value_err)?.fibers)
    }

    /// `Psi_f` on the halo, as images of halo positions.
    fn psi(&self, f: usize) -> PyResult<Vec<usize>> {
        self.check(f)?;
        Ok(self.inner.psi(f).map_err(value_err)?.images().to_vec())
    }

    /// `(alpha, f)` with `alpha` a bar-unit and `alpha -> f == x`.
    fn decompose(&self, x: usize, e: usize) -> PyResult<(usize, usize)> {
        self.inner.decompose(x, e).map_err(value_err)
    }

    fn relabel(&self, perm: Vec<usize>) -> PyResult<Self> {
        self.inner.relabel(&perm).map(Self::from).map_err(value_err)
    }

    /// Full report as JSON text.
    fn report_json(&self) -> PyResult<String> {
        Ok(ReportDocument::analyze(&self.inner)
            .map_err(value_err)?
            .to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Digroup(order={}, halo={:?})",
            self.inner.order(),
            self.inner.halo()
        )
    }
}

impl PyDigroup {
    fn check(&self, x: usize) -> PyResult<()> {
        if x < self.inner.order() {
            Ok(())
        } else {
            Err(value_err(format!(
                "element {x} is outside 0..{}",
                self.inner.order()
            )))
        }
    }
}

#[pyfunction]
fn find_isomorphism(a: &PyDigroup, b: &PyDigroup) -> Option<Vec<usize>> {
    digroup::find_isomorphism(&a.inner, &b.inner)
}

#[pyfunction]
fn check_isomorphism(a: &PyDigroup, b: &PyDigroup, map: Vec<usize>) -> bool {
    is_isomorphism(&a.inner, &b.inner, &map)
}

fn perm(images: Vec<usize>) -> PyResult<Permutation> {
    Permutation::new(images).map_err(value_err)
}

/// Construction data of a transformation digroup.
#[pyclass(name = "TransDigroupSpec", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTransDigroupSpec {
    inner: TransDigroupSpec,
}

#[pymethods]
impl PyTransDigroupSpec {
    /// `G` generated by `gens` acting on `gamma` points, with `theta(gens[i]) = theta[i]`.
    #[new]
    #[pyo3(signature = (gamma, delta, gens, theta, base = 0))]
    fn new(
        gamma: usize,
        delta: usize,
        gens: Vec<Vec<usize>>,
        theta: Vec<Vec<usize>>,
        base: usize,
    ) -> PyResult<Self> {
        let gens = gens.into_iter().map(perm).collect::<PyResult<Vec<_>>>()?;
        let theta = theta.into_iter().map(perm).collect::<PyResult<Vec<_>>>()?;
        TransDigroupSpec::from_generators(gamma, delta, &gens, &theta, base)
            .map(|inner| PyTransDigroupSpec { inner })
            .map_err(value_err)
    }

    #[staticmethod]
    #[pyo3(signature = (text, cycles = false))]
    fn from_tds(text: &str, cycles: bool) -> PyResult<Self> {
        let file = io::parse_tds(text, notation(cycles)).map_err(value_err)?;
        file.to_spec()
            .map(|inner| PyTransDigroupSpec { inner })
            .map_err(value_err)
    }

    #[pyo3(signature = (cycles = false))]
    fn to_tds(&self, cycles: bool) -> String {
        io::format_tds(&TdsFile::from_spec(&self.inner), notation(cycles))
    }

    #[getter]
    fn gamma(&self) -> usize {
        self.inner.gamma_size()
    }

    #[getter]
    fn delta(&self) -> usize {
        self.inner.delta_size()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// The digroup and, per element, its l-map as `(s, images of f)`.
    fn build(&self) -> PyResult<(PyDigroup, Vec<LMapTuple>)> {
        let t = self.inner.build().map_err(value_err)?;
        let labels = t.elements.iter().map(lmap_tuple).collect();
        Ok((t.digroup.into(), labels))
    }

    /// Halo, identities and centers from closed forms, as lists of `(s, f)`.
    #[allow(clippy::type_complexity)]
    fn analyze_formulaic(
        &self,
    ) -> (
        Vec<(usize, Vec<usize>)>,
        Vec<(usize, Vec<usize>)>,
        Vec<(usize, Vec<usize>)>,
        Vec<(usize, Vec<usize>)>,
    ) {
        let r = self.inner.analyze_formulaic();
        let list = |s: &std::collections::BTreeSet<LMap>| s.iter().map(lmap_tuple).collect();
        (
            list(&r.halo),
            list(&r.identities),
            list(&r.target_center),
            list(&r.source_center),
        )
    }

    fn __repr__(&self) -> String {
        format!(
            "TransDigroupSpec(gamma={}, delta={}, group_order={})",
            self.inner.gamma_size(),
            self.inner.delta_size(),
            self.inner.group().order()
        )
    }
}

/// A verified isomorphism onto a transformation digroup.
#[pyclass(name = "Embedding", frozen, get_all)]
struct PyEmbedding {
    spec: PyTransDigroupSpec,
    target: PyDigroup,
    /// Image of each element as `(s, images of f)`.
    map: Vec<(usize, Vec<usize>)>,
    /// Image of each element as an index into `target`.
    target_indices: Vec<usize>,
    halo_size: usize,
    translation_group_order: usize,
}

#[pyfunction]
#[pyo3(signature = (d, bar_unit = None))]
fn embed(d: &PyDigroup, bar_unit: Option<usize>) -> PyResult<PyEmbedding> {
    let e = bar_unit.unwrap_or_else(|| d.inner.default_bar_unit());
    let emb = cayley::embed(&d.inner, e).map_err(value_err)?;
    Ok(PyEmbedding {
        spec: PyTransDigroupSpec {
            inner: emb.spec().clone(),
        },
        target: emb.target.digroup.clone().into(),
        map: emb.map.iter().map(lmap_tuple).collect(),
        target_indices: emb.target_indices(),
        halo_size: emb.evidence.halo_size,
        translation_group_order: emb.evidence.translation_group_order,
    })
}

fn classes(c: Catalog) -> Vec<PyDigroup> {
    c.classes.into_iter().map(PyDigroup::from).collect()
}

#[pyfunction]
fn brute_enumerate(n: usize) -> PyResult<Vec<PyDigroup>> {
    enumerate::brute_enumerate(n)
        .map(classes)
        .map_err(value_err)
}

#[pyfunction]
fn constructive_enumerate(n: usize) -> PyResult<Vec<PyDigroup>> {
    enumerate::constructive_enumerate(n)
        .map(classes)
        .map_err(value_err)
}

/// `(agrees, brute_count, constructive_count, [(brute_index, constructive_index)])`.
#[pyfunction]
fn cross_check(n: usize) -> PyResult<CrossCheckTuple> {
    let cc = enumerate::cross_check(n).map_err(value_err)?;
    let pairs = cc
        .matching
        .iter()
        .map(|m| (m.brute, m.constructive))
        .collect();
    Ok((cc.agrees(), cc.brute_count, cc.constructive_count, pairs))
}

#[pymodule]
fn digroups(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDigroup>()?;
    m.add_class::<PyValidationReport>()?;
    m.add_class::<PyTransDigroupSpec>()?;
    m.add_class::<PyEmbedding>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(find_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(check_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(brute_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(constructive_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    Ok(())
}
