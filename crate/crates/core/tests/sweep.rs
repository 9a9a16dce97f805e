use darkplex::sweep::{
    execute, preset, run_preset, run_sweep, sidecar_path, Axis, Format, Model, RunConfig, RunOptions, SweepError,
    SweepSpec, EXIT_CONFIG, EXIT_PARTIAL, PRESETS,
};

#[test]
fn config_round_trips_through_toml() {
    let mut c = RunConfig::default();
    c.apply_override("cmt.g_d=0.25").unwrap();
    c.apply_override("quantum.emitter_tracking=\"optimal\"").unwrap();
    c.apply_override("grid.points=11").unwrap();
    let back = RunConfig::from_toml_str(&c.to_toml_string(), "round trip").unwrap();
    assert_eq!(back, c);
    assert_eq!(back.cmt.g_d, 0.25);
}

#[test]
fn partial_config_keeps_defaults() {
    let c = RunConfig::from_toml_str("[nanosphere]\nradius = 8\n", "x.toml").unwrap();
    assert_eq!(c.nanosphere.radius, 8.0);
    assert_eq!(c.cmt, RunConfig::default().cmt);
}

#[test]
fn override_errors_are_config_errors() {
    let mut c = RunConfig::default();
    for bad in ["cmt.g_d", "cmt.g_d=abc", "cmt.omega_b=-1", "quantum.solver=\"exact\""] {
        let e = c.apply_override(bad).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_CONFIG, "{bad}: {e}");
    }
    assert_eq!(c, RunConfig::default());
}

#[test]
fn spec_round_trips_and_orders_points() {
    let spec = SweepSpec::new(Model::Cmt, "m.csv", Axis::new("cmt.omega_e", 3.0, 3.4, 3).link("cmt.g_d", 0.0, 0.4))
        .with_axis2(Axis::new("probe.omega", 2.9, 3.1, 4))
        .with_set("cmt.g_b", 0.08);
    let back = SweepSpec::from_toml_str(&spec.to_toml_string(), "spec").unwrap();
    assert_eq!(back, spec);

    let r = run_sweep(&spec, &RunConfig::default(), Some(2)).unwrap();
    assert_eq!(r.table.rows.len(), 12);
    assert_eq!(&r.table.columns[..4], ["cmt.omega_e", "cmt.g_d", "probe.omega", "delta_e"]);
    let outer = r.table.column("cmt.omega_e").unwrap();
    let linked = r.table.column("cmt.g_d").unwrap();
    let inner = r.table.column("probe.omega").unwrap();
    assert_eq!(&outer[..4], [3.0; 4]);
    assert_eq!(outer[11], 3.4);
    assert!((linked[4] - 0.2).abs() < 1e-15);
    assert_eq!(inner[..4], inner[4..8]);
    assert_eq!(r.config.cmt.g_b, 0.08);
}

#[test]
fn execute_writes_data_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let spec = SweepSpec::new(Model::Nanosphere, "sub/gap.csv", Axis::new("nanosphere.gap", 1.0, 3.0, 3));
    let report = execute(&spec, &RunConfig::default(), Some(dir.path()), RunOptions::default()).unwrap();
    let data = dir.path().join("sub/gap.csv");
    assert!(report.outputs.contains(&data));
    let text = std::fs::read_to_string(&data).unwrap();
    assert!(text.starts_with("# columns: nanosphere.gap,g_b,g_d,"));
    assert_eq!(text.lines().count(), 5);

    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(sidecar_path(&data)).unwrap()).unwrap();
    assert_eq!(meta["model"], "nanosphere");
    assert_eq!(meta["points"], 3);
    assert_eq!(meta["failed"], 0);
    assert!(meta["version"].as_str().unwrap().starts_with(env!("CARGO_PKG_VERSION")));
    assert!(meta["config"]["nanosphere"]["radius"].is_number());
}

#[test]
fn json_output_is_valid_and_maps_nan_to_null() {
    let dir = tempfile::tempdir().unwrap();
    let spec = SweepSpec::new(Model::Quantum, "q.csv", Axis::new("quantum.g_b", 0.0, 0.1, 2))
        .with_set("quantum.mu_e", 0.0)
        .with_set("quantum.mu_b", 0.0)
        .with_set("quantum.mu_d", 0.0);
    let options = RunOptions {
        format: Format::Json,
        ..RunOptions::default()
    };
    let report = execute(&spec, &RunConfig::default(), Some(dir.path()), options).unwrap();
    assert_eq!(report.failed, 2);
    let e = report.into_result().unwrap_err();
    assert_eq!(e.exit_code(), EXIT_PARTIAL);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("q.json")).unwrap()).unwrap();
    let g2 = v["columns"].as_array().unwrap().iter().position(|c| c == "g2").unwrap();
    assert!(v["rows"][0][g2].is_null());
    assert!(v["errors"][0].is_string());
}

#[test]
fn unknown_path_is_rejected_before_evaluation() {
    let spec = SweepSpec::new(Model::Cmt, "x.csv", Axis::new("cmt.omega_x", 1.0, 2.0, 3));
    match run_sweep(&spec, &RunConfig::default(), None) {
        Err(e @ SweepError::UnknownPath { .. }) => assert!(e.to_string().contains("cmt.omega")),
        other => panic!("{other:?}"),
    }
    let spec = SweepSpec::new(Model::Cmt, "x.csv", Axis::new("cmt.g_d", 0.0, 1.0, 0));
    assert_eq!(run_sweep(&spec, &RunConfig::default(), None).unwrap_err().exit_code(), EXIT_CONFIG);
}

#[test]
fn every_preset_builds_and_names_its_outputs() {
    let base = RunConfig::default();
    for (name, _) in PRESETS {
        let p = preset(name, &base).unwrap();
        assert!(p.sweeps().count() >= 1, "{name}");
        for s in p.sweeps() {
            s.resolve(&base).unwrap();
            assert!(s.output.to_string_lossy().starts_with(name), "{name}: {}", s.output.display());
        }
        let script = p.plot_script();
        assert!(script.contains("matplotlib") && !script.contains("@NAME@"), "{name}");
    }
    let e = preset("fig2", &base).unwrap_err();
    assert!(e.to_string().contains("fig2a"), "{e}");
}

#[test]
fn preset_writes_data_sidecars_and_script() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_preset("fig2a", &RunConfig::default(), dir.path(), RunOptions::default()).unwrap();
    for f in ["fig2a.csv", "fig2a_no_dark.csv", "fig2a.csv.meta.json", "fig2a.py"] {
        assert!(dir.path().join(f).exists(), "{f} missing; wrote {:?}", report.outputs);
    }
    let meta = std::fs::read_to_string(dir.path().join("fig2a.csv.meta.json")).unwrap();
    assert!(meta.contains("\"preset\": \"fig2a\""), "{meta}");
}
