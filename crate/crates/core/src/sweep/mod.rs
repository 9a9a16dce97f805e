//! Configuration, parameter sweeps, figure presets and file output.
//!
//! A sweep varies one or two dotted parameter paths (e.g. `quantum.g_d`)
//! over linear grids, evaluates one model per grid point and writes a CSV
//! (or JSON) table with a `.meta.json` sidecar. Presets are fixed sweeps.

mod config;
mod engine;
mod error;
mod output;
mod presets;
mod spec;

pub use config::{
    all_paths, load_config, unit_of, DriveTracking, EmitterTracking, GridSection, MapSection, ProbeSection,
    QuantumSection, QuantumSolver, QuantumSource, RunConfig, NUMERIC_PATHS, SCHEMA_VERSION,
};
pub use engine::{
    execute, ldos_table, modes_table, observable_columns, run_sweep, write_sweep, Evaluator, PointResult, RunOptions,
    RunReport, SweepResult,
};
pub use error::{Line, Suggestion, SweepError, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, EXIT_PARTIAL};
pub use output::{format_number, sidecar_path, version_string, Format, Table};
pub use presets::{preset, run_preset, Preset, PresetPart, PRESETS};
pub use spec::{Axis, Linked, Model, SweepSpec};
