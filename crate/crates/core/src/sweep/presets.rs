//! Figure presets. Each preset is a list of ordinary sweeps (plus, for the
//! LDOS figure, the mode ladder) and a generated plotting script.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::config::RunConfig;
use super::engine::{execute, modes_table, RunOptions, RunReport};
use super::error::{suggest, SweepError};
use super::output::write_file;
use super::spec::{Axis, Model, SweepSpec};

/// Name and documented resolution of every preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("fig1c", "LDOS of the sphere: 1501 frequencies over [2.5, 4] eV, plus the mode ladder"),
    ("fig2a", "scattering spectrum, 1501 frequencies over [2.5, 4] eV, with and without the dark mode"),
    ("fig2b", "scattering map: [map] detunings x [grid] frequencies (default 201 x 601) with eigenvalue overlay"),
    ("fig2c", "Hopfield fractions versus emitter detuning ([map] points, default 201)"),
    ("fig3a", "quantum scattering map versus radius [5, 20] nm (31) x drive [2, 4.5] eV (251), h = 1.5 nm"),
    ("fig3b", "g2 versus radius [5, 20] nm (31), drive on the lower polariton, h = 1.5 nm"),
    ("fig3c", "quantum scattering map versus gap [0.5, 5] nm (46) x drive [2, 4.5] eV (251), R = 5 nm"),
    ("fig3d", "g2 versus gap [0.5, 5] nm (46), drive on the lower polariton, R = 5 nm"),
    ("figS1", "quantum map: g_D [0, 1] (21, g_B co-swept to 0.3) x drive [2, 4.5] eV (251)"),
    ("figS2", "as figS1 with the emitter held at the optimal detuning"),
];

const SPECTRUM: (f64, f64, usize) = (2.5, 4.0, 1501);
const DRIVE: (f64, f64, usize) = (2.0, 4.5, 251);

#[derive(Debug, Clone, PartialEq)]
pub enum PresetPart {
    Sweep(SweepSpec),
    /// Mode ladder of the configured sphere.
    Modes { output: PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    pub parts: Vec<PresetPart>,
    panels: Vec<Value>,
}

fn drive_axis() -> Axis {
    Axis::new("quantum.omega_l", DRIVE.0, DRIVE.1, DRIVE.2)
}

fn spectrum_axis() -> Axis {
    Axis::new("probe.omega", SPECTRUM.0, SPECTRUM.1, SPECTRUM.2)
}

fn detuning_axis(c: &RunConfig) -> Axis {
    let w = c.cmt.omega_b;
    Axis::new("cmt.omega_e", w + c.map.delta_min, w + c.map.delta_max, c.map.points)
}

fn sphere_quantum(spec: SweepSpec, lower_polariton: bool) -> SweepSpec {
    spec.with_set("quantum.source", "nanosphere")
        .with_set("quantum.emitter_tracking", "dark")
        .with_set("probe.tracking", if lower_polariton { "lower_polariton" } else { "fixed" })
}

fn line(title: &str, x: &str, xlabel: &str, series: Value, logy: bool) -> Value {
    json!({"kind": "line", "title": title, "x": x, "xlabel": xlabel, "series": series, "logy": logy})
}

fn map(title: &str, file: &str, x: &str, y: &str, z: &str, labels: (&str, &str), log: bool, overlay: &[&str]) -> Value {
    json!({
        "kind": "map", "title": title, "file": file, "x": x, "y": y, "z": z,
        "xlabel": labels.0, "ylabel": labels.1, "log": log, "overlay": overlay,
    })
}

fn series(file: &str, y: &str, label: &str, dashed: bool) -> Value {
    json!({"file": file, "y": y, "label": label, "dashed": dashed})
}

/// Builds the named preset against `base`; ranges tied to the
/// configuration (fig2b/fig2c) read it here.
pub fn preset(name: &str, base: &RunConfig) -> Result<Preset, SweepError> {
    let sweep = |model, file: &str, axis| {
        let mut s = SweepSpec::new(model, file, axis);
        s.preset = Some(name.to_string());
        s
    };
    let (parts, panels) = match name {
        "fig1c" => (
            vec![
                PresetPart::Sweep(sweep(Model::Nanosphere, "fig1c.csv", spectrum_axis())),
                PresetPart::Modes {
                    output: "fig1c_modes.csv".into(),
                },
            ],
            vec![line(
                "LDOS",
                "probe.omega",
                "omega (eV)",
                json!([
                    series("fig1c.csv", "j_total", "total", false),
                    series("fig1c.csv", "j_dipole", "dipole", true),
                    series("fig1c.csv", "j_dark", "n >= 2", true),
                ]),
                true,
            )],
        ),
        "fig2a" => (
            vec![
                PresetPart::Sweep(sweep(Model::Cmt, "fig2a.csv", spectrum_axis())),
                PresetPart::Sweep(sweep(Model::Cmt, "fig2a_no_dark.csv", spectrum_axis()).with_set("cmt.g_d", 0.0)),
            ],
            vec![line(
                "|s-|^2",
                "probe.omega",
                "omega (eV)",
                json!([
                    series("fig2a.csv", "intensity", "with dark mode", false),
                    series("fig2a_no_dark.csv", "intensity", "g_D = 0", true),
                ]),
                false,
            )],
        ),
        "fig2b" => {
            let g = &base.grid;
            let spec = sweep(Model::Cmt, "fig2b.csv", detuning_axis(base))
                .with_axis2(Axis::new("probe.omega", g.omega_min, g.omega_max, g.points));
            (
                vec![PresetPart::Sweep(spec)],
                vec![map(
                    "|s-|^2",
                    "fig2b.csv",
                    "delta_e",
                    "probe.omega",
                    "intensity",
                    ("delta_E (eV)", "omega (eV)"),
                    false,
                    &["lp_re", "mp_re", "up_re"],
                )],
            )
        }
        "fig2c" => {
            let fractions = |p: &str| {
                line(
                    &p.to_uppercase(),
                    "delta_e",
                    "delta_E (eV)",
                    json!([
                        series("fig2c.csv", &format!("{p}_b"), "B", false),
                        series("fig2c.csv", &format!("{p}_d"), "D", false),
                        series("fig2c.csv", &format!("{p}_e"), "E", false),
                    ]),
                    false,
                )
            };
            (
                vec![PresetPart::Sweep(sweep(Model::Cmt, "fig2c.csv", detuning_axis(base)))],
                vec![fractions("lp"), fractions("mp"), fractions("up")],
            )
        }
        "fig3a" | "fig3c" => {
            let (file, axis, fixed, label) = if name == "fig3a" {
                ("fig3a.csv", Axis::new("nanosphere.radius", 5.0, 20.0, 31), ("nanosphere.gap", 1.5), "R (nm)")
            } else {
                ("fig3c.csv", Axis::new("nanosphere.gap", 0.5, 5.0, 46), ("nanosphere.radius", 5.0), "h (nm)")
            };
            let x = axis.path.clone();
            let spec = sphere_quantum(sweep(Model::Quantum, file, axis), false)
                .with_set(fixed.0, fixed.1)
                .with_axis2(drive_axis());
            (
                vec![PresetPart::Sweep(spec)],
                vec![
                    map("S", file, &x, "quantum.omega_l", "intensity", (label, "omega_L (eV)"), true, &["lp_re", "mp_re", "up_re"]),
                    map("g2(0)", file, &x, "quantum.omega_l", "g2", (label, "omega_L (eV)"), true, &[]),
                ],
            )
        }
        "fig3b" | "fig3d" => {
            let (file, axis, fixed, label) = if name == "fig3b" {
                ("fig3b.csv", Axis::new("nanosphere.radius", 5.0, 20.0, 31), ("nanosphere.gap", 1.5), "R (nm)")
            } else {
                ("fig3d.csv", Axis::new("nanosphere.gap", 0.5, 5.0, 46), ("nanosphere.radius", 5.0), "h (nm)")
            };
            let x = axis.path.clone();
            let spec = sphere_quantum(sweep(Model::Quantum, file, axis), true).with_set(fixed.0, fixed.1);
            (
                vec![PresetPart::Sweep(spec)],
                vec![
                    line("g2(0) at the LP", &x, label, json!([series(file, "g2", "g2(0)", false)]), true),
                    line("S at the LP", &x, label, json!([series(file, "intensity", "S", false)]), true),
                ],
            )
        }
        "figS1" | "figS2" => {
            let file = format!("{name}.csv");
            let spec = sweep(Model::Quantum, &file, Axis::new("quantum.g_d", 0.0, 1.0, 21).link("quantum.g_b", 0.0, 0.3))
                .with_set("quantum.source", "manual")
                .with_set("quantum.emitter_tracking", if name == "figS1" { "fixed" } else { "optimal" })
                .with_set("probe.tracking", "fixed")
                .with_axis2(drive_axis());
            let labels = ("g_D (eV)", "omega_L (eV)");
            (
                vec![PresetPart::Sweep(spec)],
                vec![
                    map("S", &file, "quantum.g_d", "quantum.omega_l", "intensity", labels, true, &["lp_re", "mp_re", "up_re"]),
                    map("g2(0)", &file, "quantum.g_d", "quantum.omega_l", "g2", labels, true, &["lp_re", "mp_re", "up_re"]),
                ],
            )
        }
        _ => {
            return Err(SweepError::UnknownPreset {
                name: name.to_string(),
                suggestion: suggest(name, PRESETS.iter().map(|p| p.0)),
                available: PRESETS.iter().map(|p| p.0).collect::<Vec<_>>().join(", "),
            })
        }
    };
    Ok(Preset {
        name: name.to_string(),
        parts,
        panels,
    })
}

impl Preset {
    /// Every sweep of the preset, e.g. to replay it with `darkplex sweep`.
    pub fn sweeps(&self) -> impl Iterator<Item = &SweepSpec> {
        self.parts.iter().filter_map(|p| match p {
            PresetPart::Sweep(s) => Some(s),
            PresetPart::Modes { .. } => None,
        })
    }

    /// Python/matplotlib script that reads the preset's data files from its
    /// own directory and writes `<name>.png`.
    pub fn plot_script(&self) -> String {
        let panels = serde_json::to_string_pretty(&self.panels).expect("panels serialise");
        PLOT_TEMPLATE
            .replace("@NAME@", &self.name)
            .replace("@PANELS@", &panels)
    }
}

/// Runs every part into `out_dir` and writes `<name>.py`.
pub fn run_preset(name: &str, base: &RunConfig, out_dir: &Path, options: RunOptions) -> Result<RunReport, SweepError> {
    let wrap = |e: SweepError| SweepError::InPreset {
        name: name.to_string(),
        source: Box::new(e),
    };
    let preset = preset(name, base)?;
    let mut report = RunReport::default();
    for part in &preset.parts {
        match part {
            PresetPart::Sweep(spec) => {
                let r = execute(spec, base, Some(out_dir), options).map_err(wrap)?;
                report.outputs.extend(r.outputs);
                report.failed += r.failed;
                report.total += r.total;
            }
            PresetPart::Modes { output } => {
                let table = modes_table(&base.nanosphere).map_err(|e| wrap(e.into()))?;
                let path = out_dir.join(output).with_extension(options.format.extension());
                table.write(&path, options.format).map_err(wrap)?;
                report.outputs.push(path);
            }
        }
    }
    let script = out_dir.join(format!("{name}.py"));
    write_file(&script, &preset.plot_script()).map_err(wrap)?;
    report.outputs.push(script);
    Ok(report)
}

const PLOT_TEMPLATE: &str = r##"#!/usr/bin/env python3
"""Plot for the darkplex preset @NAME@.

Reads the data files next to this script and writes @NAME@.png.
Requires numpy and matplotlib.
"""
import json
import os

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
PANELS = json.loads(r"""
@PANELS@
""")


def load(name):
    path = os.path.join(HERE, name)
    if not os.path.exists(path):
        path = os.path.splitext(path)[0] + ".json"
    if path.endswith(".json"):
        with open(path) as f:
            table = json.load(f)
        rows = np.array([[np.nan if v is None else v for v in r] for r in table["rows"]], dtype=float)
        return {c: rows[:, i] for i, c in enumerate(table["columns"])}
    with open(path) as f:
        header = f.readline()
    columns = header.split(":", 1)[1].strip().split(",")[:-1]
    data = np.genfromtxt(path, delimiter=",", comments="#", usecols=range(len(columns)), ndmin=2)
    return {c: data[:, i] for i, c in enumerate(columns)}


def draw_line(ax, panel):
    for s in panel["series"]:
        d = load(s["file"])
        ax.plot(d[panel["x"]], d[s["y"]], "--" if s["dashed"] else "-", label=s["label"])
    if panel["logy"]:
        ax.set_yscale("log")
    ax.set_xlabel(panel["xlabel"])
    ax.legend()


def draw_map(ax, panel):
    d = load(panel["file"])
    x, y, z = d[panel["x"]], d[panel["y"]], d[panel["z"]]
    ny = int(np.argmax(x != x[0])) or len(x)
    nx = len(x) // ny
    xs, ys = x[::ny], y[:ny]
    grid = z.reshape(nx, ny).T
    if panel["log"]:
        grid = np.log10(np.where(grid > 0, grid, np.nan))
    mesh = ax.pcolormesh(xs, ys, grid, shading="nearest")
    plt.colorbar(mesh, ax=ax, label=("log10 " if panel["log"] else "") + panel["z"])
    for col in panel["overlay"]:
        ax.plot(xs, d[col][::ny], "w--", lw=0.8)
    ax.set_ylim(ys[0], ys[-1])
    ax.set_xlabel(panel["xlabel"])
    ax.set_ylabel(panel["ylabel"])


def main():
    fig, axes = plt.subplots(1, len(PANELS), figsize=(5 * len(PANELS), 4), squeeze=False)
    for ax, panel in zip(axes[0], PANELS):
        (draw_map if panel["kind"] == "map" else draw_line)(ax, panel)
        ax.set_title(panel["title"])
    fig.tight_layout()
    fig.savefig(os.path.join(HERE, "@NAME@.png"), dpi=150)


if __name__ == "__main__":
    main()
"##;
