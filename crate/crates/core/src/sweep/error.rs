use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::Error;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Bad configuration, sweep specification, path or preset name.
pub const EXIT_CONFIG: i32 = 2;
/// A numerical failure aborted the run.
pub const EXIT_NUMERICAL: i32 = 3;
/// The sweep finished but some points failed.
pub const EXIT_PARTIAL: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suggestion(pub Option<String>);

impl fmt::Display for Suggestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(s) => write!(f, " (did you mean `{s}`?)"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Line(pub Option<usize>);

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(l) => write!(f, " at line {l}"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("{source_name}: parse error{line}: {message}")]
    Parse {
        source_name: String,
        line: Line,
        message: String,
    },

    #[error("{source_name}: unknown key `{key}`{line}{suggestion}")]
    UnknownKey {
        source_name: String,
        key: String,
        line: Line,
        suggestion: Suggestion,
    },

    #[error("invalid configuration: {0}")]
    Invalid(#[source] Error),

    #[error("unknown parameter path `{path}`{suggestion}")]
    UnknownPath { path: String, suggestion: Suggestion },

    #[error("invalid value for `{path}`: {reason}")]
    BadValue { path: String, reason: String },

    #[error("invalid sweep specification: {0}")]
    Spec(String),

    #[error("unknown preset `{name}`{suggestion}; available: {available}")]
    UnknownPreset {
        name: String,
        suggestion: Suggestion,
        available: String,
    },

    #[error(transparent)]
    Model(#[from] Error),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("preset `{name}`: {source}")]
    InPreset {
        name: String,
        #[source]
        source: Box<SweepError>,
    },

    #[error("{failed} of {total} sweep points failed")]
    Partial { failed: usize, total: usize },
}

impl SweepError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Model(e) if e.is_numerical() => EXIT_NUMERICAL,
            SweepError::Partial { .. } => EXIT_PARTIAL,
            SweepError::InPreset { source, .. } => source.exit_code(),
            _ => EXIT_CONFIG,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SweepError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Best match for `key` among `candidates`, comparing lower-cased names
/// with underscores and dots removed.
pub(crate) fn suggest<'a>(key: &str, candidates: impl IntoIterator<Item = &'a str>) -> Suggestion {
    let norm = |s: &str| s.to_lowercase().replace(['_', '.'], "");
    let target = norm(key);
    let last = |s: &'a str| s.rsplit('.').next().unwrap_or(s);
    let best = candidates
        .into_iter()
        .map(|c| {
            let score = strsim::normalized_levenshtein(&target, &norm(c))
                .max(strsim::normalized_levenshtein(&target, &norm(last(c))));
            (score, c)
        })
        // first candidate wins ties
        .fold(None, |best: Option<(f64, &str)>, cur| match best {
            Some(b) if b.0 >= cur.0 => Some(b),
            _ => Some(cur),
        });
    Suggestion(best.filter(|(s, _)| *s >= 0.5).map(|(_, c)| c.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suggestions_ignore_case_and_separators() {
        let s = suggest("gammaB", ["gamma_b_rad", "gamma_e_rad", "g_b", "omega_b"]);
        assert_eq!(s.0.as_deref(), Some("gamma_b_rad"));
        let s = suggest("cmt.gd", ["cmt.g_d", "cmt.g_b", "quantum.g_d"]);
        assert_eq!(s.0.as_deref(), Some("cmt.g_d"));
        assert_eq!(suggest("zzzzzz", ["g_b"]).0, None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(SweepError::Spec("x".into()).exit_code(), EXIT_CONFIG);
        assert_eq!(SweepError::Partial { failed: 1, total: 2 }.exit_code(), EXIT_PARTIAL);
        assert_eq!(
            SweepError::Model(Error::Singular { condition: 1e20 }).exit_code(),
            EXIT_NUMERICAL
        );
        assert_eq!(
            SweepError::Model(Error::invalid("x", "bad")).exit_code(),
            EXIT_CONFIG
        );
        let wrapped = SweepError::InPreset {
            name: "fig2a".into(),
            source: Box::new(SweepError::Partial { failed: 1, total: 2 }),
        };
        assert_eq!(wrapped.exit_code(), EXIT_PARTIAL);
        assert!(wrapped.to_string().starts_with("preset `fig2a`"));
    }
}
