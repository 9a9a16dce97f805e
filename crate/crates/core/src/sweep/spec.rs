//! Declarative 1D/2D sweep description.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{unknown_numeric, RunConfig};
use super::error::{suggest, Line, SweepError};
use crate::peaks::linspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Cmt,
    Nanosphere,
    Quantum,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Cmt => "cmt",
            Model::Nanosphere => "nanosphere",
            Model::Quantum => "quantum",
        }
    }
}

/// A parameter moved in lockstep with its axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Linked {
    pub path: String,
    pub start: f64,
    pub stop: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub path: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub linked: Vec<Linked>,
}

impl Axis {
    pub fn new(path: &str, start: f64, stop: f64, points: usize) -> Self {
        Self {
            path: path.to_string(),
            start,
            stop,
            points,
            linked: Vec::new(),
        }
    }

    pub fn link(mut self, path: &str, start: f64, stop: f64) -> Self {
        self.linked.push(Linked {
            path: path.to_string(),
            start,
            stop,
        });
        self
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.points)
    }

    /// Every (path, value) pair set at grid index `i`.
    pub fn assignments(&self, i: usize) -> Vec<(&str, f64)> {
        // same arithmetic as `linspace`, so axis columns match the values set
        let at = |a: f64, b: f64| {
            if i + 1 == self.points {
                b
            } else {
                a + (b - a) / (self.points - 1) as f64 * i as f64
            }
        };
        std::iter::once((self.path.as_str(), at(self.start, self.stop)))
            .chain(self.linked.iter().map(|l| (l.path.as_str(), at(l.start, l.stop))))
            .collect()
    }

    fn paths(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.path.as_str()).chain(self.linked.iter().map(|l| l.path.as_str()))
    }

    fn validate(&self, name: &str) -> Result<(), SweepError> {
        if self.points < 2 {
            return Err(SweepError::Spec(format!("{name}: needs at least 2 points (got {})", self.points)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(SweepError::Spec(format!(
                "{name}: range must satisfy start < stop (got {}..{})",
                self.start, self.stop
            )));
        }
        for l in &self.linked {
            if !(l.start.is_finite() && l.stop.is_finite()) {
                return Err(SweepError::Spec(format!("{name}: linked `{}` range must be finite", l.path)));
            }
        }
        Ok(())
    }
}

/// What to compute, over which grid, and where to write it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub model: Model,
    pub output: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Configuration overrides applied before the sweep, by dotted path.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub set: BTreeMap<String, toml::Value>,
    pub axis: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<Axis>,
}

impl SweepSpec {
    pub fn new(model: Model, output: impl Into<PathBuf>, axis: Axis) -> Self {
        Self {
            model,
            output: output.into(),
            preset: None,
            set: BTreeMap::new(),
            axis,
            axis2: None,
        }
    }

    pub fn with_axis2(mut self, axis: Axis) -> Self {
        self.axis2 = Some(axis);
        self
    }

    pub fn with_set(mut self, path: &str, value: impl Into<toml::Value>) -> Self {
        self.set.insert(path.to_string(), value.into());
        self
    }

    pub fn from_toml_str(text: &str, source_name: &str) -> Result<Self, SweepError> {
        toml::from_str(text).map_err(|e: toml::de::Error| {
            let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            let message = e.message().to_string();
            // serde reports unknown fields with the expected list; add a hint
            let hint = message
                .split('`')
                .nth(1)
                .filter(|_| message.starts_with("unknown field"))
                .map(|k| {
                    suggest(
                        k,
                        ["model", "output", "preset", "set", "axis", "axis2", "path", "start", "stop", "points", "linked"],
                    )
                    .to_string()
                })
                .unwrap_or_default();
            SweepError::Parse {
                source_name: source_name.to_string(),
                line: Line(line),
                message: format!("{message}{hint}"),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, SweepError> {
        let text = std::fs::read_to_string(path).map_err(|e| SweepError::io(path, e))?;
        Self::from_toml_str(&text, &path.display().to_string())
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("sweep specification is representable as TOML")
    }

    pub fn points(&self) -> usize {
        self.axis.points * self.axis2.as_ref().map_or(1, |a| a.points)
    }

    /// Axis values (outer, inner) of flat row `k`; rows are outer-axis major.
    pub fn indices(&self, k: usize) -> (usize, Option<usize>) {
        match &self.axis2 {
            Some(a2) => (k / a2.points, Some(k % a2.points)),
            None => (k, None),
        }
    }

    /// Checks the grid and every path, and returns the base configuration
    /// with the overrides applied. Nothing is computed.
    pub fn resolve(&self, base: &RunConfig) -> Result<RunConfig, SweepError> {
        self.axis.validate("axis")?;
        let mut seen: Vec<&str> = Vec::new();
        let axes = std::iter::once(&self.axis).chain(self.axis2.as_ref());
        if let Some(a2) = &self.axis2 {
            a2.validate("axis2")?;
        }
        for axis in axes {
            for p in axis.paths() {
                if base.get_numeric(p).is_none() {
                    return Err(unknown_numeric(p));
                }
                if seen.contains(&p) {
                    return Err(SweepError::Spec(format!("parameter `{p}` is swept twice")));
                }
                seen.push(p);
            }
        }
        let mut config = base.clone();
        for (path, value) in &self.set {
            config.set_value(path, value.clone())?;
        }
        Ok(config)
    }
}
