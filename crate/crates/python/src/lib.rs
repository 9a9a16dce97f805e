//! Python module `darkplex`.
//!
//! Model parameters are passed as keyword arguments named like the TOML
//! configuration keys (`g_b=0.05`, `omega_d=3.4`, ...); omitted keys take
//! their defaults and unknown keys raise `ValueError`.

use std::path::PathBuf;

use dpx::analytics;
use dpx::cmt::{self, CmtParams, Polariton};
use dpx::nanosphere::{self, SphereSystem};
use dpx::quantum::{self, QuantumParams};
use dpx::sweep::{self, RunConfig, RunOptions, SweepError, SweepSpec};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyInt, PyString};
use serde::de::DeserializeOwned;

create_exception!(darkplex, DarkplexError, PyRuntimeError, "Numerical failure inside darkplex.");

fn model_err(e: dpx::Error) -> PyErr {
    if e.is_numerical() {
        DarkplexError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn sweep_err(e: SweepError) -> PyErr {
    match e.exit_code() {
        sweep::EXIT_CONFIG => PyValueError::new_err(e.to_string()),
        _ => DarkplexError::new_err(e.to_string()),
    }
}

fn to_toml(value: &Bound<'_, PyAny>, key: &str) -> PyResult<toml::Value> {
    if value.is_instance_of::<PyBool>() {
        Ok(toml::Value::Boolean(value.extract()?))
    } else if value.is_instance_of::<PyInt>() {
        Ok(toml::Value::Integer(value.extract()?))
    } else if value.is_instance_of::<PyFloat>() {
        Ok(toml::Value::Float(value.extract()?))
    } else if value.is_instance_of::<PyString>() {
        Ok(toml::Value::String(value.extract()?))
    } else if let Ok(d) = value.cast::<PyDict>() {
        Ok(toml::Value::Table(to_table(Some(d))?))
    } else {
        Err(PyValueError::new_err(format!("unsupported value for `{key}`")))
    }
}

fn to_table(kwargs: Option<&Bound<'_, PyDict>>) -> PyResult<toml::Table> {
    let mut t = toml::Table::new();
    if let Some(d) = kwargs {
        for (k, v) in d.iter() {
            let key: String = k.extract()?;
            let value = to_toml(&v, &key)?;
            t.insert(key, value);
        }
    }
    Ok(t)
}

/// Deserialises keyword arguments into a parameter struct; integers are
/// accepted where floats are expected.
fn params<T: DeserializeOwned + serde::Serialize + Default>(kwargs: Option<&Bound<'_, PyDict>>) -> PyResult<T> {
    let given = to_table(kwargs)?;
    let mut table = toml::Table::try_from(T::default()).expect("defaults serialise");
    for (k, v) in given {
        let v = match (table.get(&k), v) {
            (Some(toml::Value::Float(_)), toml::Value::Integer(i)) => toml::Value::Float(i as f64),
            (_, v) => v,
        };
        table.insert(k, v);
    }
    toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| PyValueError::new_err(e.message().to_string()))
}

fn apply_overrides(config: &mut RunConfig, overrides: Option<Vec<String>>) -> PyResult<()> {
    for o in overrides.unwrap_or_default() {
        config.apply_override(&o).map_err(sweep_err)?;
    }
    Ok(())
}

/// Package version, with the git description of the build tree.
#[pyfunction]
fn version() -> String {
    sweep::version_string()
}

/// |s₋(ω)|² of the classical three-mode model for unit incident amplitude.
#[pyfunction]
#[pyo3(signature = (omega, **params))]
fn cmt_spectrum(py: Python<'_>, omega: Vec<f64>, params: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<f64>> {
    let p: CmtParams = self::params(params)?;
    py.detach(|| cmt::scattering_spectrum(&p, &omega))
        .map(|s| s.intensity)
        .map_err(model_err)
}

/// Complex eigenvalues (LP, MP, UP) with their Hopfield fractions (B, D, E).
#[pyfunction]
#[pyo3(signature = (**params))]
fn cmt_eigenmodes(params: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<(dpx::Complex64, [f64; 3])>> {
    let p: CmtParams = self::params(params)?;
    let eig = cmt::build_cmt_hamiltonian(&p)
        .and_then(|h| cmt::eigenmodes(&h))
        .map_err(model_err)?;
    Ok(Polariton::ALL.iter().map(|&b| (eig.value(b), eig.hopfield(b))).collect())
}

/// Splitting 2 g_B cos(θ/2) of the bright-coupled polariton pair.
#[pyfunction]
fn bright_rabi_splitting(g_b: f64, g_d: f64, omega_d: f64, omega_e: f64) -> PyResult<f64> {
    analytics::bright_rabi_splitting(g_b, g_d, omega_d, omega_e).map_err(model_err)
}

/// Emitter detuning δ_E = g_D² / (ω_D − ω_B) that maximises the splitting.
#[pyfunction]
fn optimal_detuning(g_d: f64, omega_b: f64, omega_d: f64) -> PyResult<f64> {
    analytics::optimal_detuning(g_d, omega_b, omega_d).map_err(model_err)
}

/// Bright-mode and pseudomode parameters of a sphere geometry, as a dict.
#[pyfunction]
#[pyo3(signature = (**params))]
fn effective_parameters<'py>(py: Python<'py>, params: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyDict>> {
    let sys: SphereSystem = self::params(params)?;
    let e = py.detach(|| nanosphere::effective_parameters(&sys)).map_err(model_err)?;
    let out = PyDict::new(py);
    if let serde_json::Value::Object(map) = serde_json::to_value(e).expect("serialisable") {
        for (k, v) in map {
            out.set_item(k, v.as_f64())?;
        }
    }
    Ok(out)
}

/// Weak-pump scan over drive frequencies. Returns a dict of lists with keys
/// omega_l, intensity, g2, population and weak_pump_ok.
#[pyfunction]
#[pyo3(signature = (omega_l, n_b = 2, n_d = 2, **params))]
fn quantum_scan<'py>(
    py: Python<'py>,
    omega_l: Vec<f64>,
    n_b: usize,
    n_d: usize,
    params: Option<&Bound<'py, PyDict>>,
) -> PyResult<Bound<'py, PyDict>> {
    let qp: QuantumParams = self::params(params)?;
    let points = py
        .detach(|| {
            let space = quantum::build_space(n_b, n_d)?;
            quantum::spectrum_scan(&qp, &space, &omega_l)
        })
        .map_err(model_err)?;
    let out = PyDict::new(py);
    out.set_item("omega_l", points.iter().map(|p| p.omega_l).collect::<Vec<_>>())?;
    out.set_item("intensity", points.iter().map(|p| p.intensity).collect::<Vec<_>>())?;
    out.set_item("g2", points.iter().map(|p| p.g2).collect::<Vec<_>>())?;
    out.set_item("population", points.iter().map(|p| p.population).collect::<Vec<_>>())?;
    out.set_item("weak_pump_ok", points.iter().map(|p| p.weak_pump_ok).collect::<Vec<_>>())?;
    Ok(out)
}

/// (S, g²(0)) from the dense master-equation steady state.
#[pyfunction]
#[pyo3(signature = (n_b = 2, n_d = 2, **params))]
fn lindblad_g2(py: Python<'_>, n_b: usize, n_d: usize, params: Option<&Bound<'_, PyDict>>) -> PyResult<(f64, f64)> {
    let qp: QuantumParams = self::params(params)?;
    py.detach(|| {
        let space = quantum::build_space(n_b, n_d)?;
        let rho = quantum::lindblad_steady_state(&qp, &space)?;
        quantum::observables_from_rho(&rho, &space, qp.mu_e, qp.mu_b)
    })
    .map_err(model_err)
}

/// Runs a figure preset into `out_dir`; returns the written paths.
/// `overrides` are `section.key=value` strings.
#[pyfunction]
#[pyo3(signature = (name, out_dir, overrides = None, threads = None))]
fn run_preset(
    py: Python<'_>,
    name: &str,
    out_dir: PathBuf,
    overrides: Option<Vec<String>>,
    threads: Option<usize>,
) -> PyResult<Vec<PathBuf>> {
    let mut config = RunConfig::default();
    apply_overrides(&mut config, overrides)?;
    let options = RunOptions {
        threads,
        ..RunOptions::default()
    };
    py.detach(|| sweep::run_preset(name, &config, &out_dir, options).and_then(|r| r.into_result()))
        .map(|r| r.outputs)
        .map_err(sweep_err)
}

/// Runs a sweep given as TOML text; relative outputs go under `out_dir`.
#[pyfunction]
#[pyo3(signature = (spec, out_dir = None, overrides = None))]
fn run_sweep(py: Python<'_>, spec: &str, out_dir: Option<PathBuf>, overrides: Option<Vec<String>>) -> PyResult<Vec<PathBuf>> {
    let spec = SweepSpec::from_toml_str(spec, "<spec>").map_err(sweep_err)?;
    let mut config = RunConfig::default();
    apply_overrides(&mut config, overrides)?;
    py.detach(|| sweep::execute(&spec, &config, out_dir.as_deref(), RunOptions::default()).and_then(|r| r.into_result()))
        .map(|r| r.outputs)
        .map_err(sweep_err)
}

/// Names of the available presets.
#[pyfunction]
fn presets() -> Vec<&'static str> {
    sweep::PRESETS.iter().map(|p| p.0).collect()
}

#[pymodule]
#[pyo3(name = "darkplex")]
fn darkplex_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DarkplexError", m.py().get_type::<DarkplexError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(version, m)?)?;
    m.add_function(wrap_pyfunction!(cmt_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(cmt_eigenmodes, m)?)?;
    m.add_function(wrap_pyfunction!(bright_rabi_splitting, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_detuning, m)?)?;
    m.add_function(wrap_pyfunction!(effective_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_scan, m)?)?;
    m.add_function(wrap_pyfunction!(lindblad_g2, m)?)?;
    m.add_function(wrap_pyfunction!(run_preset, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    Ok(())
}
