//! Python bindings: the main types (root data, torus points, parameters) and
//! operations (enumeration, twisting, formal degrees, verification campaigns)
//! exposed as a small extension module. Exact values cross the boundary as
//! strings ("p/q" rationals) or JSON-shaped dictionaries.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use klform::campaign::{run_enumerate, run_galois_check, run_hecke_verify, CampaignConfig};
use klform::cyclotomic::{rat_from_str, rat_to_string, GaloisAutomorphism};
use klform::degree::{degree_numeric, float_oracle_degree, galois_invariance_report, m_function};
use klform::parameters::{
    adjoint_projection, build_parameter, centralizer_dimension, enumerate_parameters,
    galois_twist, is_essentially_discrete, jm_cocharacter, steinberg_point,
    type_a_central_torsion, KLParameter, ParameterWire,
};
use klform::root_datum::{RootDatum as CoreRootDatum, RootDatumSpec};
use klform::weyl::{poincare_polynomial, weyl_elements};

fn err(e: klform::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// serde_json::Value -> native Python objects.
fn value_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.unbind().into()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, value_to_py(py, val)?)?;
            }
            dict.unbind().into()
        }
    })
}

fn serialize_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value)
        .map_err(|e| PyValueError::new_err(format!("serialization: {e}")))?;
    value_to_py(py, &v)
}

#[pyclass(name = "RootDatum", skip_from_py_object)]
#[derive(Clone)]
struct PyRootDatum {
    inner: CoreRootDatum,
}

#[pymethods]
impl PyRootDatum {
    /// Build from shorthand ("A2-sc", "A1-gl", ...) or a JSON spec document.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let parsed = if spec.trim_start().starts_with('{') {
            serde_json::from_str::<RootDatumSpec>(spec)
                .map_err(|e| PyValueError::new_err(format!("bad spec JSON: {e}")))?
        } else {
            RootDatumSpec::parse_shorthand(spec).map_err(err)?
        };
        Ok(PyRootDatum { inner: CoreRootDatum::build(&parsed).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn dim_flag(&self) -> usize {
        self.inner.dim_flag()
    }

    #[getter]
    fn is_semisimple(&self) -> bool {
        self.inner.is_semisimple()
    }

    #[getter]
    fn simple_roots(&self) -> Vec<Vec<i64>> {
        self.inner.simple_roots().to_vec()
    }

    #[getter]
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots().to_vec()
    }

    fn weyl_order(&self) -> PyResult<usize> {
        Ok(weyl_elements(&self.inner).map_err(err)?.len())
    }

    /// Coefficients of the Poincare polynomial of W_J, ascending in q.
    fn poincare_polynomial(&self, j: Vec<usize>) -> PyResult<Vec<i64>> {
        Ok(poincare_polynomial(&self.inner, &j).map_err(err)?.0)
    }

    fn weight_stabilizer(&self, weight: Vec<i64>) -> PyResult<Vec<usize>> {
        self.inner.weight_stabilizer(&weight).map_err(err)
    }

    /// Dominant weights with stabilizer exactly J, height at most bound.
    fn enumerate_lambda(&self, j: Vec<usize>, bound: i64) -> PyResult<Vec<Vec<i64>>> {
        self.inner.enumerate_lambda(&j, bound).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({})", self.inner.name())
    }
}

#[pyclass(name = "Parameter", skip_from_py_object)]
#[derive(Clone)]
struct PyParameter {
    inner: KLParameter,
}

#[pymethods]
impl PyParameter {
    /// Build from size, partition, torsion exponents ("p/q" strings), rho.
    #[new]
    #[pyo3(signature = (n, partition, torsion, rho_dim = 1))]
    fn new(n: usize, partition: Vec<u32>, torsion: Vec<String>, rho_dim: u32) -> PyResult<Self> {
        let torsion = torsion
            .iter()
            .map(|s| rat_from_str(s))
            .collect::<klform::Result<Vec<_>>>()
            .map_err(err)?;
        Ok(PyParameter {
            inner: build_parameter(n, &partition, &torsion, rho_dim).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let wire: ParameterWire = serde_json::from_str(text)
            .map_err(|e| PyValueError::new_err(format!("bad parameter JSON: {e}")))?;
        Ok(PyParameter { inner: wire.to_parameter().map_err(err)? })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&ParameterWire::from_parameter(&self.inner)).expect("serializable")
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.gl_rank()
    }

    #[getter]
    fn partition(&self) -> Vec<u32> {
        self.inner.partition().to_vec()
    }

    #[getter]
    fn torsion(&self) -> Vec<String> {
        self.inner.torus_point().torsion().iter().map(rat_to_string).collect()
    }

    #[getter]
    fn q_exponents(&self) -> Vec<String> {
        self.inner.torus_point().q_exponents().iter().map(rat_to_string).collect()
    }

    #[getter]
    fn valid(&self) -> bool {
        self.inner.is_valid()
    }

    #[getter]
    fn violation(&self) -> Option<(usize, usize)> {
        self.inner.violation()
    }

    #[getter]
    fn torsion_level(&self) -> u32 {
        self.inner.torsion_level()
    }

    fn centralizer_dimension(&self) -> PyResult<usize> {
        centralizer_dimension(&self.inner).map_err(err)
    }

    fn is_essentially_discrete(&self) -> PyResult<bool> {
        is_essentially_discrete(&self.inner).map_err(err)
    }

    /// Twist by zeta -> zeta^k at the given level; returns the twisted
    /// parameter and the preservation flags.
    fn galois_twist<'py>(
        &self,
        py: Python<'py>,
        level: u32,
        k: u32,
    ) -> PyResult<(PyParameter, Py<PyAny>)> {
        let g = GaloisAutomorphism::new(level, k).map_err(err)?;
        let result = galois_twist(&g, &self.inner).map_err(err)?;
        let flags = serialize_to_py(py, &result.preserved)?;
        Ok((PyParameter { inner: result.output }, flags))
    }

    /// Formal-degree report of the adjoint projection at q0 ("p/q" string).
    #[pyo3(signature = (q0, height_bound, tol = 1e-6))]
    fn degree_report<'py>(
        &self,
        py: Python<'py>,
        q0: &str,
        height_bound: i64,
        tol: f64,
    ) -> PyResult<Py<PyAny>> {
        let (rd, s) = adjoint_projection(&self.inner).map_err(err)?;
        let q = rat_from_str(q0).map_err(err)?;
        let report =
            degree_numeric(&rd, &s, &q, height_bound, tol, self.inner.rho_dim()).map_err(err)?;
        serialize_to_py(py, &report)
    }

    fn label(&self) -> String {
        self.inner.label()
    }

    fn __repr__(&self) -> String {
        format!("Parameter({})", self.inner.label())
    }
}

/// All valid parameters for GL_n at a torsion level, in canonical order.
#[pyfunction(name = "enumerate_parameters")]
fn py_enumerate_parameters(n: usize, torsion_level: u32) -> PyResult<Vec<PyParameter>> {
    Ok(enumerate_parameters(n, torsion_level)
        .map_err(err)?
        .into_iter()
        .map(|inner| PyParameter { inner })
        .collect())
}

/// The Jacobson-Morozov cocharacter of a partition, as "p/q" strings.
#[pyfunction(name = "jm_cocharacter")]
fn py_jm_cocharacter(partition: Vec<u32>) -> PyResult<Vec<String>> {
    Ok(jm_cocharacter(&partition).map_err(err)?.iter().map(rat_to_string).collect())
}

/// Formal-degree report for the Steinberg point of a semisimple datum,
/// optionally twisted by central torsion (type A simply-connected data).
#[pyfunction]
#[pyo3(signature = (datum, q0, height_bound, central_twist = 0, rho_dim = 1, gamma = None))]
fn steinberg_degree<'py>(
    py: Python<'py>,
    datum: &PyRootDatum,
    q0: &str,
    height_bound: i64,
    central_twist: i64,
    rho_dim: u32,
    gamma: Option<(u32, u32)>,
) -> PyResult<Py<PyAny>> {
    let rd = &datum.inner;
    let st = steinberg_point(rd).map_err(err)?;
    let s = if central_twist != 0 {
        let torsion = type_a_central_torsion(rd.rank(), central_twist);
        klform::parameters::TorusPoint::new(torsion, st.q_exponents().to_vec()).map_err(err)?
    } else {
        st
    };
    let q = rat_from_str(q0).map_err(err)?;
    let report = match gamma {
        Some((level, k)) => {
            let g = GaloisAutomorphism::new(level, k).map_err(err)?;
            galois_invariance_report(rd, &s, &g, height_bound, &q, rho_dim).map_err(err)?
        }
        None => degree_numeric(rd, &s, &q, height_bound, 1e-6, rho_dim).map_err(err)?,
    };
    serialize_to_py(py, &report)
}

/// M(lambda, s) for the adjoint projection of a parameter, as exact
/// numerator/denominator coefficient arrays plus a display string.
#[pyfunction]
fn m_function_exact<'py>(
    py: Python<'py>,
    param: &PyParameter,
    lambda: Vec<i64>,
) -> PyResult<Py<PyAny>> {
    let (rd, s) = adjoint_projection(&param.inner).map_err(err)?;
    let f = m_function(&rd, &lambda, &s).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("ratfun", serialize_to_py(py, &f)?)?;
    dict.set_item("display", f.to_string())?;
    Ok(dict.unbind().into())
}

/// Independent floating-point degree oracle (verification path).
#[pyfunction]
fn oracle_degree(param: &PyParameter, q0: &str, height_bound: i64) -> PyResult<f64> {
    let (rd, s) = adjoint_projection(&param.inner).map_err(err)?;
    let q = rat_from_str(q0).map_err(err)?;
    float_oracle_degree(&rd, &s, &q, height_bound).map_err(err)
}

/// Enumeration table with discreteness and centralizer columns.
#[pyfunction]
fn enumerate_table<'py>(py: Python<'py>, n: usize, torsion_level: u32) -> PyResult<Py<PyAny>> {
    serialize_to_py(py, &run_enumerate(n, torsion_level).map_err(err)?)
}

/// Full Galois-twist verification campaign over enumerated parameters.
#[pyfunction]
#[pyo3(signature = (sizes, torsion_levels, height_bound, q0, numeric_tolerance = 1e-8))]
fn galois_check<'py>(
    py: Python<'py>,
    sizes: Vec<usize>,
    torsion_levels: Vec<u32>,
    height_bound: i64,
    q0: Vec<String>,
    numeric_tolerance: f64,
) -> PyResult<Py<PyAny>> {
    let config = CampaignConfig {
        sizes,
        torsion_levels,
        gammas: None,
        height_bound,
        q0,
        numeric_tolerance,
        rho_dim: 1,
    };
    serialize_to_py(py, &run_galois_check(&config).map_err(err)?)
}

/// Hecke-algebra relation suite for a named datum.
#[pyfunction]
#[pyo3(signature = (datum, length_bound = 3))]
fn hecke_verify<'py>(py: Python<'py>, datum: &PyRootDatum, length_bound: i64) -> PyResult<Py<PyAny>> {
    serialize_to_py(py, &run_hecke_verify(&datum.inner, length_bound).map_err(err)?)
}

#[pymodule]
fn klform_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyParameter>()?;
    m.add_function(wrap_pyfunction!(py_enumerate_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(py_jm_cocharacter, m)?)?;
    m.add_function(wrap_pyfunction!(steinberg_degree, m)?)?;
    m.add_function(wrap_pyfunction!(m_function_exact, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_degree, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_table, m)?)?;
    m.add_function(wrap_pyfunction!(galois_check, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_verify, m)?)?;
    Ok(())
}
