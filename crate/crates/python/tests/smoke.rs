//! Loads the compiled extension into the system Python and runs
//! `python/smoke_test.py` against it.

use std::path::PathBuf;
use std::process::Command;

fn built_library() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let name = format!("{}darkplex_py{}", std::env::consts::DLL_PREFIX, std::env::consts::DLL_SUFFIX);
    profile_dir.join(name)
}

#[test]
fn python_smoke_test() {
    if Command::new("python3").arg("--version").output().is_err() {
        eprintln!("python3 not found; skipping");
        return;
    }
    let lib = built_library();
    assert!(lib.exists(), "extension not built at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let module = dir.path().join(if cfg!(windows) { "darkplex.pyd" } else { "darkplex.so" });
    std::fs::copy(&lib, &module).unwrap();
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new("python3")
        .arg(&script)
        .env("PYTHONPATH", dir.path())
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success(),
        "smoke test failed\nstdout:\n{stdout}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout.contains("smoke test passed"));
}
