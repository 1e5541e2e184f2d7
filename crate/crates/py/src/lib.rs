//! Python bindings: `import torell_py`.

// The pymethods expansion converts PyErr into itself.
#![allow(clippy::useless_conversion)]

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use torell::generators::{self, BottTowerSpec};
use torell::lattice::{self, IntMatrix};
use torell::num_bigint::BigInt;
use torell::{ComplexError, FanDocument, ValidatedFan};

create_exception!(torell_py, TorellError, PyValueError);
create_exception!(torell_py, PreconditionError, TorellError);

fn err(e: impl std::fmt::Display) -> PyErr {
    TorellError::new_err(e.to_string())
}

fn complex_err(e: ComplexError) -> PyErr {
    match e {
        ComplexError::PreconditionFailed(msg) => PreconditionError::new_err(msg),
        other => err(other),
    }
}

fn matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(&rows).map_err(err)
}

/// A simplicial fan: primitive integer rays and maximal cones as ray indices.
#[pyclass(module = "torell_py", frozen)]
#[derive(Clone)]
struct Fan {
    inner: torell::Fan,
}

impl Fan {
    fn validated(&self) -> PyResult<ValidatedFan> {
        torell::validate(self.inner.clone()).map_err(err)
    }
}

#[pymethods]
impl Fan {
    /// Rays are made primitive; duplicates and invalid cones raise `TorellError`.
    #[new]
    fn new(dim: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = torell::Fan::normalized(dim, rays, max_cones).map_err(err)?;
        Ok(Fan { inner })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        let doc = FanDocument::parse(text).map_err(err)?;
        Ok(Fan {
            inner: doc.to_fan().map_err(err)?,
        })
    }

    #[pyo3(signature = (name=None))]
    fn to_toml(&self, name: Option<String>) -> String {
        FanDocument::from_fan(&self.inner, name).to_toml_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn rays(&self) -> Vec<Vec<BigInt>> {
        self.inner.rays().to_vec()
    }

    #[getter]
    fn max_cones(&self) -> Vec<Vec<usize>> {
        self.inner.max_cones().to_vec()
    }

    /// Every geometric check as a dict; never raises for a well-formed fan.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = torell::validation_report(&self.inner);
        let d = PyDict::new_bound(py);
        d.set_item("ok", r.is_ok())?;
        d.set_item("simplicial", r.simplicial)?;
        d.set_item("fan_axiom_ok", r.fan_axiom_ok)?;
        d.set_item("complete", r.complete)?;
        d.set_item("smooth", r.smooth)?;
        d.set_item("simply_connected", r.simply_connected)?;
        d.set_item("multiplicities", r.multiplicities)?;
        d.set_item("failures", r.failures)?;
        Ok(d)
    }

    /// Raises `PreconditionError` for incomplete or non simply connected fans.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let vf = self.validated()?;
        let c = torell::classify(&vf).map_err(complex_err)?;
        let d = PyDict::new_bound(py);
        d.set_item("elliptic", c.elliptic)?;
        d.set_item("blocks", c.blocks)?;
        d.set_item("block_dims", c.block_dims)?;
        d.set_item("reason", c.reason)?;
        Ok(d)
    }

    fn betti_numbers(&self) -> PyResult<Vec<u64>> {
        torell::betti_numbers(&self.validated()?).map_err(complex_err)
    }

    /// `Y` factors, group and weights; raises unless the fan is elliptic.
    fn quotient_presentation<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let vf = self.validated()?;
        let q = torell::quotient_presentation(&vf).map_err(|e| match e {
            torell::CoxError::Complex(c) => complex_err(c),
            other => err(other),
        })?;
        let d = PyDict::new_bound(py);
        let factors: Vec<usize> =
            q.y.product_factors
                .iter()
                .flatten()
                .map(|n| n + 1)
                .collect();
        d.set_item("y_factors", factors)?;
        d.set_item("removed_subspaces", q.y.removed_subspaces)?;
        d.set_item("free_rank", q.group.free_rank)?;
        d.set_item("torsion", q.group.torsion.clone())?;
        let weights: Vec<(Vec<BigInt>, Vec<BigInt>)> = q
            .group
            .weights
            .iter()
            .map(|w| (w.free.clone(), w.torsion.clone()))
            .collect();
        d.set_item("weights", weights)?;
        d.set_item("smooth_case", q.smooth_case)?;
        let stabilizers: Vec<(usize, Vec<BigInt>)> = q
            .stabilizers
            .into_iter()
            .map(|s| (s.cone, s.invariants))
            .collect();
        d.set_item("stabilizers", stabilizers)?;
        Ok(d)
    }

    fn is_isomorphic(&self, other: &Fan) -> bool {
        generators::fans_isomorphic(&self.inner, &other.inner)
    }

    /// Subdivides the given cone; `cone` lists ray indices.
    fn star_subdivision(&self, cone: Vec<usize>) -> PyResult<Fan> {
        let inner = generators::star_subdivision(&self.validated()?, &cone).map_err(err)?;
        Ok(Fan { inner })
    }

    fn __eq__(&self, other: &Fan) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Fan(dim={}, rays={:?}, max_cones={:?})",
            self.inner.dim(),
            self.ray_strings(),
            self.inner.max_cones()
        )
    }
}

impl Fan {
    fn ray_strings(&self) -> Vec<Vec<String>> {
        self.inner
            .rays()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

#[pyfunction]
fn projective_space(n: usize) -> PyResult<Fan> {
    Ok(Fan {
        inner: generators::projective_space(n).map_err(err)?,
    })
}

#[pyfunction]
fn weighted_projective(weights: Vec<i64>) -> PyResult<Fan> {
    Ok(Fan {
        inner: generators::weighted_projective(&weights).map_err(err)?,
    })
}

#[pyfunction]
fn hirzebruch(a: i64) -> Fan {
    Fan {
        inner: generators::hirzebruch(a),
    }
}

#[pyfunction]
fn product(a: &Fan, b: &Fan) -> Fan {
    Fan {
        inner: generators::product(&a.inner, &b.inner),
    }
}

/// Generalized Bott tower from a spec string such as `"1;1:a=2"`.
#[pyfunction]
fn bott_tower(spec: &str) -> PyResult<Fan> {
    let spec: BottTowerSpec = spec.parse().map_err(err)?;
    Ok(Fan {
        inner: generators::generalized_bott_fan(&spec).map_err(err)?,
    })
}

/// Returns `(U, D, V)` with `U * M * V = D`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn smith_normal_form(
    rows: Vec<Vec<BigInt>>,
) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let s = lattice::smith_normal_form(&matrix(rows)?);
    Ok((s.u.to_rows(), s.d.to_rows(), s.v.to_rows()))
}

#[pyfunction]
fn determinant(rows: Vec<Vec<BigInt>>) -> PyResult<BigInt> {
    lattice::determinant(&matrix(rows)?).map_err(err)
}

#[pymodule]
fn torell_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TorellError", m.py().get_type_bound::<TorellError>())?;
    m.add(
        "PreconditionError",
        m.py().get_type_bound::<PreconditionError>(),
    )?;
    m.add_class::<Fan>()?;
    m.add_function(wrap_pyfunction!(projective_space, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_projective, m)?)?;
    m.add_function(wrap_pyfunction!(hirzebruch, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(bott_tower, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(determinant, m)?)?;
    Ok(())
}
