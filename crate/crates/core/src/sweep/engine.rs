//! Grid evaluation: per-point observables for each model, computed on a
//! worker pool and assembled in grid order.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{unit_of, QuantumSolver, QuantumSource, RunConfig};
use super::error::SweepError;
use super::output::{sidecar_path, version_string, write_file, Format, Table};
use super::spec::{Model, SweepSpec};
use crate::cmt::{build_cmt_hamiltonian, eigenmodes, steady_state_response, Polariton};
use crate::nanosphere::{effective_parameters, mode_ladder, EffectiveParams, ModeLadder, SphereSystem};
use crate::quantum::{
    g2_zero, lindblad_steady_state, observables_from_rho, scattering_intensity, weak_pump_unchecked,
    WEAK_PUMP_LIMIT,
};
use crate::{Error, Result};

const CMT_COLUMNS: &[(&str, &str)] = &[
    ("delta_e", "eV"),
    ("intensity", "1"),
    ("s_re", "1"),
    ("s_im", "1"),
    ("lp_re", "eV"),
    ("lp_im", "eV"),
    ("mp_re", "eV"),
    ("mp_im", "eV"),
    ("up_re", "eV"),
    ("up_im", "eV"),
    ("lp_b", "1"),
    ("lp_d", "1"),
    ("lp_e", "1"),
    ("mp_b", "1"),
    ("mp_d", "1"),
    ("mp_e", "1"),
    ("up_b", "1"),
    ("up_d", "1"),
    ("up_e", "1"),
];

const NANOSPHERE_COLUMNS: &[(&str, &str)] = &[
    ("g_b", "eV"),
    ("g_d", "eV"),
    ("omega_b", "eV"),
    ("omega_d", "eV"),
    ("gamma_b", "eV"),
    ("gamma_b_rad", "eV"),
    ("gamma_d", "eV"),
    ("mu_b", "D"),
    ("gamma_e_rad", "eV"),
    ("truncation_ratio", "1"),
    ("j_total", "eV"),
    ("j_dipole", "eV"),
    ("j_dark", "eV"),
    ("purcell", "1"),
];

const QUANTUM_COLUMNS: &[(&str, &str)] = &[
    ("omega_e", "eV"),
    ("omega_l", "eV"),
    ("g_b", "eV"),
    ("g_d", "eV"),
    ("intensity", "D^2 eV^2"),
    ("g2", "1"),
    ("population", "1"),
    ("weak_pump_ok", "bool"),
    ("lp_re", "eV"),
    ("mp_re", "eV"),
    ("up_re", "eV"),
];

/// Observable columns (name, unit) a model produces, in output order.
pub fn observable_columns(model: Model) -> &'static [(&'static str, &'static str)] {
    match model {
        Model::Cmt => CMT_COLUMNS,
        Model::Nanosphere => NANOSPHERE_COLUMNS,
        Model::Quantum => QUANTUM_COLUMNS,
    }
}

struct SphereEntry {
    effective: EffectiveParams,
    ladder: ModeLadder,
}

/// Evaluates single points; caches nanosphere fits across points that
/// share a geometry.
#[derive(Default)]
pub struct Evaluator {
    spheres: Mutex<HashMap<String, Arc<SphereEntry>>>,
}

/// Values in `observable_columns` order plus an optional per-point error.
/// A point can carry values and an error at once (e.g. undefined g²).
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub values: Vec<f64>,
    pub error: Option<String>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    fn sphere(&self, sys: &SphereSystem) -> Result<Arc<SphereEntry>> {
        let key = serde_json::to_string(sys).expect("serialisable");
        if let Some(e) = self.spheres.lock().expect("cache lock").get(&key) {
            return Ok(e.clone());
        }
        let entry = Arc::new(SphereEntry {
            effective: effective_parameters(sys)?,
            ladder: mode_ladder(sys)?,
        });
        self.spheres.lock().expect("cache lock").insert(key, entry.clone());
        Ok(entry)
    }

    pub fn evaluate(&self, model: Model, config: &RunConfig) -> PointResult {
        let n = observable_columns(model).len();
        let outcome = config.validate().and_then(|_| match model {
            Model::Cmt => self.cmt(config),
            Model::Nanosphere => self.nanosphere(config),
            Model::Quantum => self.quantum(config),
        });
        match outcome {
            Ok(r) => r,
            Err(e) => PointResult {
                values: vec![f64::NAN; n],
                error: Some(e.to_string()),
            },
        }
    }

    fn cmt(&self, config: &RunConfig) -> Result<PointResult> {
        let p = &config.cmt;
        let response = steady_state_response(p, config.probe.omega, Complex64::from(config.probe.s_plus))?;
        let eig = eigenmodes(&build_cmt_hamiltonian(p)?)?;
        let mut values = vec![
            p.emitter_detuning(),
            response.intensity(),
            response.s_minus.re,
            response.s_minus.im,
        ];
        for b in Polariton::ALL {
            values.extend([eig.value(b).re, eig.value(b).im]);
        }
        for b in Polariton::ALL {
            values.extend(eig.hopfield(b));
        }
        Ok(PointResult { values, error: None })
    }

    fn nanosphere(&self, config: &RunConfig) -> Result<PointResult> {
        let sys = &config.nanosphere;
        let entry = self.sphere(sys)?;
        let e = &entry.effective;
        let omega = config.probe.omega;
        let j = entry.ladder.spectral_density(omega);
        let (purcell, error) = match sys.purcell_factor(&entry.ladder, omega) {
            Ok(f) => (f, None),
            Err(err) => (f64::NAN, Some(err.to_string())),
        };
        let values = vec![
            e.g_b,
            e.g_d,
            e.omega_b,
            e.omega_d,
            e.gamma_b,
            e.gamma_b_rad,
            e.gamma_d,
            e.mu_b,
            e.gamma_e_rad,
            e.truncation_ratio,
            j.total,
            j.dipole,
            j.dark,
            purcell,
        ];
        Ok(PointResult { values, error })
    }

    fn quantum(&self, config: &RunConfig) -> Result<PointResult> {
        let effective = match config.quantum.source {
            QuantumSource::Nanosphere => Some(self.sphere(&config.nanosphere)?.effective),
            QuantumSource::Manual => None,
        };
        let (qp, space) = config.quantum_params(effective.as_ref())?;
        let eig = eigenmodes(&qp.single_excitation_block())?;
        let (intensity, g2, population) = match config.quantum.solver {
            QuantumSolver::WeakPump => {
                let psi = weak_pump_unchecked(&qp, &space)?;
                let s = scattering_intensity(&psi, qp.mu_e, qp.mu_b);
                (s, g2_zero(&psi, qp.mu_e, qp.mu_b), psi.excited_population())
            }
            QuantumSolver::Lindblad => {
                let rho = lindblad_steady_state(&qp, &space)?;
                // probability outside the vacuum, as in the weak-pump check
                let population = rho.matrix().diagonal().iter().skip(1).map(|p| p.re).sum();
                match observables_from_rho(&rho, &space, qp.mu_e, qp.mu_b) {
                    Ok((s, g)) => (s, Ok(g), population),
                    Err(Error::UndefinedStatistics { intensity }) => {
                        (intensity, Err(Error::UndefinedStatistics { intensity }), population)
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        let (g2, error) = match g2 {
            Ok(g) => (g, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let values = vec![
            qp.omega_e,
            qp.omega_l,
            qp.g_b,
            qp.g_d,
            intensity,
            g2,
            population,
            if population <= WEAK_PUMP_LIMIT { 1.0 } else { 0.0 },
            eig.value(Polariton::Lower).re,
            eig.value(Polariton::Middle).re,
            eig.value(Polariton::Upper).re,
        ];
        Ok(PointResult { values, error })
    }
}

/// Execution options shared by sweeps and presets.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub format: Format,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    /// Base configuration with the spec's overrides applied.
    pub config: RunConfig,
    pub table: Table,
    pub seconds_per_point: Vec<f64>,
}

impl SweepResult {
    pub fn failed(&self) -> usize {
        self.table.failed()
    }
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, SweepError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| SweepError::Spec(format!("cannot start {n} worker threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Evaluates every grid point. Path and grid errors are reported before
/// any computation; per-point failures land in the table's error column.
pub fn run_sweep(spec: &SweepSpec, base: &RunConfig, threads: Option<usize>) -> Result<SweepResult, SweepError> {
    let config = spec.resolve(base)?;
    let evaluator = Evaluator::new();
    let mut columns: Vec<(String, String)> = Vec::new();
    for axis in std::iter::once(&spec.axis).chain(spec.axis2.as_ref()) {
        for (path, _) in axis.assignments(0) {
            columns.push((path.to_string(), unit_of(path).to_string()));
        }
    }
    let axis_columns = columns.len();
    columns.extend(
        observable_columns(spec.model)
            .iter()
            .map(|(n, u)| (n.to_string(), u.to_string())),
    );

    let points = in_pool(threads, || {
        (0..spec.points())
            .into_par_iter()
            .map(|k| {
                let start = Instant::now();
                let (i, j) = spec.indices(k);
                let mut point = config.clone();
                let mut assigned = spec.axis.assignments(i);
                if let (Some(a2), Some(j)) = (&spec.axis2, j) {
                    assigned.extend(a2.assignments(j));
                }
                let mut row: Vec<f64> = assigned.iter().map(|(_, v)| *v).collect();
                let set = assigned
                    .iter()
                    .try_for_each(|(path, v)| point.set_numeric(path, *v));
                let result = match set {
                    Ok(()) => evaluator.evaluate(spec.model, &point),
                    Err(e) => PointResult {
                        values: vec![f64::NAN; observable_columns(spec.model).len()],
                        error: Some(e.to_string()),
                    },
                };
                row.extend(result.values);
                (row, result.error, start.elapsed().as_secs_f64())
            })
            .collect::<Vec<_>>()
    })?;

    let names: Vec<(&str, &str)> = columns.iter().map(|(n, u)| (n.as_str(), u.as_str())).collect();
    let mut table = Table::new(&names);
    let mut seconds_per_point = Vec::with_capacity(points.len());
    for (row, error, secs) in points {
        debug_assert_eq!(row.len(), axis_columns + observable_columns(spec.model).len());
        table.push(row, error);
        seconds_per_point.push(secs);
    }
    Ok(SweepResult {
        spec: spec.clone(),
        config,
        table,
        seconds_per_point,
    })
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: String,
    preset: Option<&'a str>,
    model: &'static str,
    data: String,
    format: Format,
    spec: &'a SweepSpec,
    config: &'a RunConfig,
    points: usize,
    failed: usize,
    total_seconds: f64,
    seconds_per_point: &'a [f64],
}

/// Writes the data file and its `.meta.json` sidecar; returns the data path.
pub fn write_sweep(result: &SweepResult, path: &Path, format: Format) -> Result<PathBuf, SweepError> {
    let path = path.with_extension(format.extension());
    result.table.write(&path, format)?;
    let sidecar = Sidecar {
        tool: "darkplex",
        version: version_string(),
        preset: result.spec.preset.as_deref(),
        model: result.spec.model.name(),
        data: path.file_name().unwrap_or_default().to_string_lossy().into_owned(),
        format,
        spec: &result.spec,
        config: &result.config,
        points: result.table.rows.len(),
        failed: result.failed(),
        total_seconds: result.seconds_per_point.iter().sum(),
        seconds_per_point: &result.seconds_per_point,
    };
    let mut json = serde_json::to_string_pretty(&sidecar).expect("sidecar serialises");
    json.push('\n');
    write_file(&sidecar_path(&path), &json)?;
    Ok(path)
}

/// Paths written and failure count of a sweep or preset run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub outputs: Vec<PathBuf>,
    pub failed: usize,
    pub total: usize,
}

impl RunReport {
    /// `Err(Partial)` when any point failed.
    pub fn into_result(self) -> Result<Self, SweepError> {
        if self.failed > 0 {
            Err(SweepError::Partial {
                failed: self.failed,
                total: self.total,
            })
        } else {
            Ok(self)
        }
    }
}

/// Runs a sweep and writes its outputs. A relative spec output is placed
/// under `out_dir`.
pub fn execute(
    spec: &SweepSpec,
    base: &RunConfig,
    out_dir: Option<&Path>,
    options: RunOptions,
) -> Result<RunReport, SweepError> {
    let result = run_sweep(spec, base, options.threads)?;
    let target = match out_dir {
        Some(dir) if spec.output.is_relative() => dir.join(&spec.output),
        _ => spec.output.clone(),
    };
    let path = write_sweep(&result, &target, options.format)?;
    Ok(RunReport {
        outputs: vec![path],
        failed: result.failed(),
        total: result.table.rows.len(),
    })
}

/// Mode ladder table: one row per multipole order.
pub fn modes_table(sys: &SphereSystem) -> Result<Table> {
    let ladder = mode_ladder(sys)?;
    let mut t = Table::new(&[("n", "1"), ("omega_n", "eV"), ("gamma_n", "eV"), ("g_n", "eV")]);
    for m in &ladder.modes {
        t.push(vec![m.n as f64, m.omega, m.gamma, m.g], None);
    }
    Ok(t)
}

/// LDOS split into dipole and dark parts on a frequency grid.
pub fn ldos_table(sys: &SphereSystem, grid: &[f64]) -> Result<Table> {
    let ladder = mode_ladder(sys)?;
    let mut t = Table::new(&[("omega", "eV"), ("j_total", "eV"), ("j_dipole", "eV"), ("j_dark", "eV")]);
    for &w in grid {
        let j = ladder.spectral_density(w);
        t.push(vec![w, j.total, j.dipole, j.dark], None);
    }
    Ok(t)
}
