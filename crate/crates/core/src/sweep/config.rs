//! Run configuration: a versioned TOML tree covering every model.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::error::{suggest, Line, SweepError};
use crate::analytics::optimal_detuning;
use crate::cmt::{eigenmodes, CmtParams, Polariton};
use crate::nanosphere::{EffectiveParams, SphereSystem};
use crate::quantum::{build_space, HilbertSpace, QuantumParams, WEAK_DRIVE};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantumSource {
    /// Mode parameters taken from the `[quantum]` section.
    Manual,
    /// Mode parameters derived from the `[nanosphere]` geometry.
    Nanosphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmitterTracking {
    /// ω_E as configured.
    Fixed,
    /// ω_E = ω_D.
    Dark,
    /// ω_E = ω_B + g_D² / (ω_D − ω_B).
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveTracking {
    /// ω_L as configured.
    Fixed,
    /// ω_L follows the real part of the lower polariton.
    LowerPolariton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantumSolver {
    /// Pure steady state of the non-Hermitian Hamiltonian.
    WeakPump,
    /// Dense master-equation steady state (small truncations only).
    Lindblad,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuantumSection {
    pub source: QuantumSource,
    pub emitter_tracking: EmitterTracking,
    pub solver: QuantumSolver,
    pub n_b: usize,
    pub n_d: usize,
    /// Largest drive amplitude max|ℰ_j|, eV.
    pub max_drive: f64,
    pub omega_e: f64,
    pub omega_b: f64,
    pub omega_d: f64,
    pub gamma_e: f64,
    pub gamma_b: f64,
    pub gamma_d: f64,
    pub g_b: f64,
    pub g_d: f64,
    pub mu_e: f64,
    pub mu_b: f64,
    pub mu_d: f64,
    pub omega_l: f64,
}

impl Default for QuantumSection {
    fn default() -> Self {
        let q = QuantumParams::default();
        Self {
            source: QuantumSource::Manual,
            emitter_tracking: EmitterTracking::Fixed,
            solver: QuantumSolver::WeakPump,
            n_b: 2,
            n_d: 2,
            max_drive: WEAK_DRIVE,
            omega_e: q.omega_e,
            omega_b: q.omega_b,
            omega_d: q.omega_d,
            gamma_e: q.gamma_e,
            gamma_b: q.gamma_b,
            gamma_d: q.gamma_d,
            g_b: q.g_b,
            g_d: q.g_d,
            mu_e: q.mu_e,
            mu_b: q.mu_b,
            mu_d: q.mu_d,
            omega_l: q.omega_l,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeSection {
    /// Probe frequency of the classical model, eV.
    pub omega: f64,
    /// Real incident amplitude s₊.
    pub s_plus: f64,
    pub tracking: DriveTracking,
}

impl Default for ProbeSection {
    fn default() -> Self {
        Self {
            omega: 3.0,
            s_plus: 1.0,
            tracking: DriveTracking::Fixed,
        }
    }
}

/// Frequency grid for spectra and drive scans, eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            omega_min: 2.5,
            omega_max: 4.0,
            points: 601,
        }
    }
}

impl GridSection {
    pub fn values(&self) -> Vec<f64> {
        crate::peaks::linspace(self.omega_min, self.omega_max, self.points)
    }
}

/// Emitter detuning range δ_E = ω_E − ω_B for detuning maps, eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MapSection {
    pub delta_min: f64,
    pub delta_max: f64,
    pub points: usize,
}

impl Default for MapSection {
    fn default() -> Self {
        Self {
            delta_min: -0.2,
            delta_max: 1.0,
            points: 201,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub schema_version: u32,
    pub cmt: CmtParams,
    pub nanosphere: SphereSystem,
    pub quantum: QuantumSection,
    pub probe: ProbeSection,
    pub grid: GridSection,
    pub map: MapSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            cmt: CmtParams::default(),
            nanosphere: SphereSystem::default(),
            quantum: QuantumSection::default(),
            probe: ProbeSection::default(),
            grid: GridSection::default(),
            map: MapSection::default(),
        }
    }
}

fn range_check(name: &str, lo: f64, hi: f64, points: usize) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid(name, format!("range must satisfy min < max (got {lo}..{hi})")));
    }
    if points < 2 {
        return Err(Error::invalid(name, format!("needs at least 2 points (got {points})")));
    }
    Ok(())
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(
                "schema_version",
                format!("unsupported version {} (expected {SCHEMA_VERSION})", self.schema_version),
            ));
        }
        self.cmt.validate().map_err(|e| prefix("cmt", e))?;
        self.nanosphere.validate()?;
        self.quantum_params_manual().validate()?;
        build_space(self.quantum.n_b, self.quantum.n_d)?;
        if !(self.quantum.max_drive > 0.0 && self.quantum.max_drive.is_finite()) {
            return Err(Error::invalid("quantum.max_drive", "must be positive"));
        }
        if !(self.probe.omega.is_finite() && self.probe.s_plus.is_finite()) {
            return Err(Error::invalid("probe", "omega and s_plus must be finite"));
        }
        range_check("grid", self.grid.omega_min, self.grid.omega_max, self.grid.points)?;
        range_check("map", self.map.delta_min, self.map.delta_max, self.map.points)?;
        Ok(())
    }

    /// Parses and validates TOML text. `source_name` labels error messages.
    pub fn from_toml_str(text: &str, source_name: &str) -> Result<Self, SweepError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| SweepError::Parse {
            source_name: source_name.to_string(),
            line: Line(e.span().map(|s| line_of_offset(text, s.start))),
            message: e.message().to_string(),
        })?;
        check_keys(&table, &default_table(), "", text, source_name)?;
        let config: RunConfig = table.try_into().map_err(|e: toml::de::Error| SweepError::Parse {
            source_name: source_name.to_string(),
            line: Line(None),
            message: e.message().to_string(),
        })?;
        config.validate().map_err(SweepError::Invalid)?;
        Ok(config)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("configuration is always representable as TOML")
    }

    /// Applies a `key=value` override; the value is read as a TOML literal
    /// and falls back to a bare string.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), SweepError> {
        let (key, raw) = assignment.split_once('=').ok_or_else(|| SweepError::BadValue {
            path: assignment.to_string(),
            reason: "expected key=value".into(),
        })?;
        let (key, raw) = (key.trim(), raw.trim());
        let value = format!("v = {raw}")
            .parse::<toml::Table>()
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| toml::Value::String(raw.to_string()));
        self.set_value(key, value)
    }

    pub fn set_value(&mut self, path: &str, value: toml::Value) -> Result<(), SweepError> {
        let mut root = toml::Value::try_from(&*self).expect("serialisable");
        let mut slot = &mut root;
        for part in path.split('.') {
            slot = match slot.as_table_mut().and_then(|t| t.get_mut(part)) {
                Some(v) => v,
                None => {
                    return Err(SweepError::UnknownPath {
                        path: path.to_string(),
                        suggestion: suggest(path, all_paths().iter().map(String::as_str)),
                    })
                }
            };
        }
        if slot.is_table() {
            return Err(SweepError::BadValue {
                path: path.to_string(),
                reason: "is a section, not a value".into(),
            });
        }
        *slot = match (&*slot, value) {
            (toml::Value::Float(_), toml::Value::Integer(i)) => toml::Value::Float(i as f64),
            (old, new) if std::mem::discriminant(old) == std::mem::discriminant(&new) => new,
            (old, new) => {
                return Err(SweepError::BadValue {
                    path: path.to_string(),
                    reason: format!("expected {}, got {}", old.type_str(), new.type_str()),
                })
            }
        };
        let updated: RunConfig = root.try_into().map_err(|e: toml::de::Error| SweepError::BadValue {
            path: path.to_string(),
            reason: e.message().to_string(),
        })?;
        updated.validate().map_err(SweepError::Invalid)?;
        *self = updated;
        Ok(())
    }

    /// Quantum parameters as written in `[quantum]`, ignoring `source`.
    pub fn quantum_params_manual(&self) -> QuantumParams {
        let q = &self.quantum;
        QuantumParams {
            omega_e: q.omega_e,
            omega_b: q.omega_b,
            omega_d: q.omega_d,
            gamma_e: q.gamma_e,
            gamma_b: q.gamma_b,
            gamma_d: q.gamma_d,
            g_b: q.g_b,
            g_d: q.g_d,
            mu_e: q.mu_e,
            mu_b: q.mu_b,
            mu_d: q.mu_d,
            e_l: 0.0,
            omega_l: q.omega_l,
        }
        .with_weak_drive(q.max_drive)
    }

    /// Fully resolved quantum model: source, emitter tracking, drive
    /// tracking and drive amplitude applied. `effective` must be supplied
    /// for the nanosphere source.
    pub fn quantum_params(&self, effective: Option<&EffectiveParams>) -> Result<(QuantumParams, HilbertSpace)> {
        let q = &self.quantum;
        let mut p = self.quantum_params_manual();
        if q.source == QuantumSource::Nanosphere {
            let e = effective.ok_or_else(|| Error::invalid("quantum.source", "nanosphere parameters missing"))?;
            p.omega_b = e.omega_b;
            p.omega_d = e.omega_d;
            p.gamma_b = e.gamma_b;
            p.gamma_d = e.gamma_d;
            p.g_b = e.g_b;
            p.g_d = e.g_d;
            p.mu_b = e.mu_b;
            p.mu_e = self.nanosphere.mu_e;
        }
        p.omega_e = match q.emitter_tracking {
            EmitterTracking::Fixed => p.omega_e,
            EmitterTracking::Dark => p.omega_d,
            EmitterTracking::Optimal => p.omega_b + optimal_detuning(p.g_d, p.omega_b, p.omega_d)?,
        };
        if self.probe.tracking == DriveTracking::LowerPolariton {
            let eig = eigenmodes(&p.single_excitation_block())?;
            p.omega_l = eig.value(Polariton::Lower).re;
        }
        p = p.with_weak_drive(q.max_drive);
        p.validate()?;
        Ok((p, build_space(q.n_b, q.n_d)?))
    }
}

fn as_f64(path: &str, v: f64) -> Result<f64, SweepError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SweepError::BadValue {
            path: path.to_string(),
            reason: format!("must be finite (got {v})"),
        })
    }
}

fn as_count(path: &str, v: f64) -> Result<u64, SweepError> {
    let r = v.round();
    if !(r >= 0.0 && r <= u32::MAX as f64) || (v - r).abs() > 1e-9 {
        return Err(SweepError::BadValue {
            path: path.to_string(),
            reason: format!("expected a non-negative integer (got {v})"),
        });
    }
    Ok(r as u64)
}

macro_rules! numeric_paths {
    ($($path:literal => $($field:ident).+ : $kind:ident),* $(,)?) => {
        /// Dotted paths accepted by sweeps.
        pub const NUMERIC_PATHS: &[&str] = &[$($path),*];

        impl RunConfig {
            /// Sets a numeric leaf without validating the whole tree.
            /// Integer leaves accept only integral values.
            pub fn set_numeric(&mut self, path: &str, value: f64) -> Result<(), SweepError> {
                match path {
                    $($path => self.$($field).+ = numeric_paths!(@set $kind, path, value),)*
                    _ => return Err(unknown_numeric(path)),
                }
                Ok(())
            }

            pub fn get_numeric(&self, path: &str) -> Option<f64> {
                match path {
                    $($path => Some(self.$($field).+ as f64),)*
                    _ => None,
                }
            }
        }
    };
    (@set f64, $path:expr, $v:expr) => { as_f64($path, $v)? };
    (@set u32, $path:expr, $v:expr) => { as_count($path, $v)? as u32 };
    (@set usize, $path:expr, $v:expr) => { as_count($path, $v)? as usize };
}

pub(crate) fn unknown_numeric(path: &str) -> SweepError {
    SweepError::UnknownPath {
        path: path.to_string(),
        suggestion: suggest(path, NUMERIC_PATHS.iter().copied()),
    }
}

numeric_paths! {
    "cmt.omega_b" => cmt.omega_b: f64,
    "cmt.omega_d" => cmt.omega_d: f64,
    "cmt.omega_e" => cmt.omega_e: f64,
    "cmt.gamma_b_rad" => cmt.gamma_b_rad: f64,
    "cmt.gamma_b_nonrad" => cmt.gamma_b_nonrad: f64,
    "cmt.gamma_d_rad" => cmt.gamma_d_rad: f64,
    "cmt.gamma_d_nonrad" => cmt.gamma_d_nonrad: f64,
    "cmt.gamma_e_rad" => cmt.gamma_e_rad: f64,
    "cmt.gamma_e_nonrad" => cmt.gamma_e_nonrad: f64,
    "cmt.g_b" => cmt.g_b: f64,
    "cmt.g_d" => cmt.g_d: f64,
    "nanosphere.radius" => nanosphere.radius: f64,
    "nanosphere.gap" => nanosphere.gap: f64,
    "nanosphere.eps_b" => nanosphere.eps_b: f64,
    "nanosphere.mu_e" => nanosphere.mu_e: f64,
    "nanosphere.omega_e" => nanosphere.omega_e: f64,
    "nanosphere.n_max" => nanosphere.n_max: u32,
    "nanosphere.metal.eps_inf" => nanosphere.metal.eps_inf: f64,
    "nanosphere.metal.omega_p" => nanosphere.metal.omega_p: f64,
    "nanosphere.metal.gamma_p" => nanosphere.metal.gamma_p: f64,
    "quantum.n_b" => quantum.n_b: usize,
    "quantum.n_d" => quantum.n_d: usize,
    "quantum.max_drive" => quantum.max_drive: f64,
    "quantum.omega_e" => quantum.omega_e: f64,
    "quantum.omega_b" => quantum.omega_b: f64,
    "quantum.omega_d" => quantum.omega_d: f64,
    "quantum.gamma_e" => quantum.gamma_e: f64,
    "quantum.gamma_b" => quantum.gamma_b: f64,
    "quantum.gamma_d" => quantum.gamma_d: f64,
    "quantum.g_b" => quantum.g_b: f64,
    "quantum.g_d" => quantum.g_d: f64,
    "quantum.mu_e" => quantum.mu_e: f64,
    "quantum.mu_b" => quantum.mu_b: f64,
    "quantum.mu_d" => quantum.mu_d: f64,
    "quantum.omega_l" => quantum.omega_l: f64,
    "probe.omega" => probe.omega: f64,
    "probe.s_plus" => probe.s_plus: f64,
}

/// Unit label of a parameter path.
pub fn unit_of(path: &str) -> &'static str {
    let leaf = path.rsplit('.').next().unwrap_or(path);
    if leaf == "radius" || leaf == "gap" {
        "nm"
    } else if leaf.starts_with("mu_") {
        "D"
    } else if leaf.starts_with("omega") || leaf.starts_with("gamma") || leaf.starts_with("g_") || leaf == "max_drive" {
        "eV"
    } else {
        "1"
    }
}

fn prefix(section: &str, e: Error) -> Error {
    match e {
        Error::InvalidParameter { name, reason } => Error::InvalidParameter {
            name: format!("{section}.{name}"),
            reason,
        },
        other => other,
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, SweepError> {
    let text = std::fs::read_to_string(path).map_err(|e| SweepError::io(path, e))?;
    RunConfig::from_toml_str(&text, &path.display().to_string())
}

fn default_table() -> toml::Table {
    toml::Table::try_from(RunConfig::default()).expect("serialisable")
}

fn collect_paths(table: &toml::Table, prefix: &str, out: &mut Vec<String>) {
    for (k, v) in table {
        let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            toml::Value::Table(t) => collect_paths(t, &path, out),
            _ => out.push(path),
        }
    }
}

/// Every dotted leaf path of the configuration tree.
pub fn all_paths() -> Vec<String> {
    let mut out = Vec::new();
    collect_paths(&default_table(), "", &mut out);
    out
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Line of the first assignment to `key` inside `[section]` (or anywhere
/// when the section is not found).
fn line_of_key(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if let Some(header) = t.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            current = header.trim().to_string();
            continue;
        }
        let lhs = t.split('=').next().unwrap_or("").trim();
        let full = if current.is_empty() {
            lhs.to_string()
        } else {
            format!("{current}.{lhs}")
        };
        let wanted = if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        };
        if t.contains('=') && (full == wanted || lhs == wanted) {
            return Some(i + 1);
        }
    }
    None
}

fn check_keys(
    table: &toml::Table,
    schema: &toml::Table,
    prefix: &str,
    text: &str,
    source_name: &str,
) -> Result<(), SweepError> {
    for (k, v) in table {
        let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match schema.get(k) {
            Some(toml::Value::Table(inner)) => {
                if let toml::Value::Table(t) = v {
                    check_keys(t, inner, &path, text, source_name)?;
                }
            }
            Some(_) => {}
            None => {
                let siblings: Vec<String> = schema
                    .iter()
                    .map(|(s, _)| if prefix.is_empty() { s.clone() } else { format!("{prefix}.{s}") })
                    .collect();
                let mut suggestion = suggest(&path, siblings.iter().map(String::as_str));
                if suggestion.0.is_none() {
                    suggestion = suggest(k, all_paths().iter().map(String::as_str));
                }
                return Err(SweepError::UnknownKey {
                    source_name: source_name.to_string(),
                    key: path,
                    line: Line(line_of_key(text, prefix, k)),
                    suggestion,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = RunConfig::from_toml_str("", "empty").unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.cmt.omega_b, 3.0);
        assert_eq!(c.cmt.omega_d, 3.4);
        assert_eq!(c.cmt.g_b, 0.05);
        assert_eq!(c.cmt.g_d, 0.4);
    }

    #[test]
    fn negative_rate_names_the_invariant() {
        let err = RunConfig::from_toml_str("[cmt]\ngamma_b_rad = -1.0\n", "t").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("cmt.gamma_b_rad") && msg.contains("non-negative"), "{msg}");
        assert_eq!(err.exit_code(), super::super::EXIT_CONFIG);
    }

    #[test]
    fn unknown_key_is_rejected_with_suggestion() {
        let err = RunConfig::from_toml_str("[cmt]\ng_b = 0.1\ngammaB = 0.05\n", "t").unwrap_err();
        match err {
            SweepError::UnknownKey {
                key, line, suggestion, ..
            } => {
                assert_eq!(key, "cmt.gammaB");
                assert_eq!(line.0, Some(3));
                assert_eq!(suggestion.0.as_deref(), Some("cmt.gamma_b_rad"));
            }
            other => panic!("{other}"),
        }
        let top = RunConfig::from_toml_str("gammaB = 0.05\n", "t").unwrap_err();
        assert!(top.to_string().contains("did you mean `quantum.gamma_b`"), "{top}");
    }

    #[test]
    fn parse_errors_carry_a_line() {
        let err = RunConfig::from_toml_str("[cmt]\ng_b = = 1\n", "t").unwrap_err();
        assert!(matches!(err, SweepError::Parse { line: Line(Some(2)), .. }), "{err}");
    }

    #[test]
    fn round_trip() {
        let mut c = RunConfig::default();
        c.apply_override("nanosphere.gap=1.5").unwrap();
        c.apply_override("quantum.emitter_tracking=optimal").unwrap();
        c.apply_override("quantum.n_b = 3").unwrap();
        c.apply_override("cmt.g_d=0").unwrap();
        let text = c.to_toml_string();
        assert_eq!(RunConfig::from_toml_str(&text, "rt").unwrap(), c);
        assert_eq!(c.quantum.emitter_tracking, EmitterTracking::Optimal);
        assert_eq!(c.cmt.g_d, 0.0);
    }

    #[test]
    fn bad_overrides() {
        let mut c = RunConfig::default();
        assert!(matches!(c.apply_override("cmt.gd=1"), Err(SweepError::UnknownPath { .. })));
        assert!(matches!(c.apply_override("cmt.g_d=\"x\""), Err(SweepError::BadValue { .. })));
        assert!(matches!(c.apply_override("cmt.g_d=-1"), Err(SweepError::Invalid(_))));
        assert!(matches!(c.apply_override("cmt=1"), Err(SweepError::BadValue { .. })));
        assert!(c.apply_override("quantum.source=sphere").is_err());
        assert_eq!(c, RunConfig::default());
    }

    #[test]
    fn numeric_paths_cover_every_numeric_leaf() {
        let c = RunConfig::default();
        let table = toml::Value::try_from(&c).unwrap();
        for path in all_paths() {
            let mut v = &table;
            for part in path.split('.') {
                v = &v[part];
            }
            let numeric = v.is_float() || v.is_integer();
            let skipped = path == "schema_version" || path.starts_with("grid.") || path.starts_with("map.");
            assert_eq!(c.get_numeric(&path).is_some(), numeric && !skipped, "{path}");
        }
        for p in NUMERIC_PATHS {
            let mut d = c.clone();
            let v = d.get_numeric(p).unwrap();
            d.set_numeric(p, v).unwrap();
            assert_eq!(d, c);
        }
    }

    #[test]
    fn numeric_setter_checks_integers() {
        let mut c = RunConfig::default();
        c.set_numeric("quantum.n_b", 3.0).unwrap();
        assert_eq!(c.quantum.n_b, 3);
        assert!(c.set_numeric("quantum.n_b", 2.5).is_err());
        assert!(c.set_numeric("cmt.g_d", f64::NAN).is_err());
        match c.set_numeric("nanosphere.gapp", 1.0) {
            Err(SweepError::UnknownPath { suggestion, .. }) => {
                assert_eq!(suggestion.0.as_deref(), Some("nanosphere.gap"))
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(unit_of("nanosphere.radius"), "nm");
        assert_eq!(unit_of("quantum.g_d"), "eV");
        assert_eq!(unit_of("quantum.mu_b"), "D");
        assert_eq!(unit_of("nanosphere.eps_b"), "1");
    }

    #[test]
    fn optimal_emitter_tracking() {
        let mut c = RunConfig::default();
        c.quantum.emitter_tracking = EmitterTracking::Optimal;
        let (p, space) = c.quantum_params(None).unwrap();
        assert!((p.omega_e - (3.0 + 0.64 / 0.5)).abs() < 1e-12);
        assert_eq!(space.dim(), 18);
        c.quantum.source = QuantumSource::Nanosphere;
        assert!(c.quantum_params(None).is_err());
    }
}
