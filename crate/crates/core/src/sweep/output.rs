//! Tabular output: CSV with a `#` header block, or JSON.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::error::SweepError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Numeric table with one optional error message per row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub units: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub errors: Vec<Option<String>>,
}

/// Nine significant digits, '.' decimal point, locale independent.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.8e}")
    }
}

impl Table {
    pub fn new(columns: &[(&str, &str)]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.0.to_string()).collect(),
            units: columns.iter().map(|c| c.1.to_string()).collect(),
            rows: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>, error: Option<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
        self.errors.push(error);
    }

    pub fn failed(&self) -> usize {
        self.errors.iter().filter(|e| e.is_some()).count()
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# columns: {},error", self.columns.join(","));
        let _ = writeln!(out, "# units: {},", self.units.join(","));
        for (row, err) in self.rows.iter().zip(&self.errors) {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&format_number(*v));
            }
            out.push(',');
            if let Some(e) = err {
                out.push_str(&e.replace([',', '\n', '\r'], ";"));
            }
            out.push('\n');
        }
        out
    }

    /// Non-finite numbers become `null`.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serialises");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<(), SweepError> {
        write_file(path, &self.render(format))
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), SweepError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| SweepError::io(dir, e))?;
    }
    let mut f = std::fs::File::create(path).map_err(|e| SweepError::io(path, e))?;
    f.write_all(contents.as_bytes()).map_err(|e| SweepError::io(path, e))
}

/// `<output>.meta.json` next to a data file.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    output.with_file_name(name)
}

/// Crate version plus `git describe` of the build tree when available.
pub fn version_string() -> String {
    let describe = env!("DARKPLEX_GIT_DESCRIBE");
    if describe.is_empty() {
        env!("CARGO_PKG_VERSION").to_string()
    } else {
        format!("{} ({describe})", env!("CARGO_PKG_VERSION"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&[("omega", "eV"), ("s", "1")]);
        t.push(vec![3.0, 0.123456789123], None);
        t.push(vec![-1e-300, f64::NAN], Some("bad, very\nbad".into()));
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(
            csv,
            "# columns: omega,s,error\n# units: eV,1,\n3.00000000e0,1.23456789e-1,\n-1.00000000e-300,nan,bad; very;bad\n"
        );
        assert!(!csv.contains('\r'));
        assert_eq!(sample().failed(), 1);
        assert_eq!(sample().column("s").unwrap()[0], 0.123456789123);
    }

    #[test]
    fn json_nulls_non_finite() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert!(v["rows"][1][1].is_null());
        assert_eq!(v["errors"][0], serde_json::Value::Null);
        assert_eq!(v["columns"][1], "s");
    }

    #[test]
    fn files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/out.csv");
        sample().write(&path, Format::Csv).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), sample().to_csv());
        assert_eq!(sidecar_path(&path).file_name().unwrap(), "out.csv.meta.json");
        assert!(version_string().starts_with(env!("CARGO_PKG_VERSION")));
    }
}
