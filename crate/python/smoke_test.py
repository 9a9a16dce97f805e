"""Smoke test for the darkplex Python module.

Build and install with `maturin develop -m crates/python/pyproject.toml`,
or put a copy of the compiled library named darkplex.so on PYTHONPATH.
"""
import math
import os
import sys
import tempfile

import darkplex


def close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def main():
    print("darkplex", darkplex.version())
    assert "fig2b" in darkplex.presets()

    # classical model at the default parameters without dark coupling: bright peak at 3 eV
    grid = [2.9 + 0.001 * i for i in range(201)]
    s = darkplex.cmt_spectrum(grid, g_d=0)
    peak = grid[max(range(len(s)), key=s.__getitem__)]
    assert abs(peak - 3.0) < 0.01, peak

    modes = darkplex.cmt_eigenmodes()
    assert len(modes) == 3
    assert sorted(m[0].real for m in modes) == [m[0].real for m in modes]
    for _, fractions in modes:
        assert abs(sum(fractions) - 1.0) < 1e-12

    assert close(darkplex.optimal_detuning(0.4, 3.0, 3.4), 0.4, 1e-12)
    assert darkplex.bright_rabi_splitting(0.05, 0.4, 3.4, 3.4) > 0.0

    try:
        darkplex.cmt_spectrum(grid, gammaB=0.1)
    except ValueError as e:
        assert "gammaB" in str(e)
    else:
        raise AssertionError("unknown key accepted")
    try:
        darkplex.cmt_spectrum(grid, g_d=-1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative coupling accepted")

    eff = darkplex.effective_parameters(radius=5, gap=1)
    assert 2.9 < eff["omega_b"] < 3.1 and eff["g_d"] > eff["g_b"] > 0

    scan = darkplex.quantum_scan([2.8, 3.0, 3.2])
    assert all(scan["weak_pump_ok"]) and all(s > 0 for s in scan["intensity"])
    s_full, g2_full = darkplex.lindblad_g2(omega_l=3.2)
    assert close(g2_full, darkplex.quantum_scan([3.2])["g2"][0], 1e-3)

    # a bare cavity emits coherent light
    g2 = darkplex.quantum_scan([3.0], g_b=0, g_d=0, mu_e=0)["g2"][0]
    assert abs(g2 - 1.0) < 1e-6, g2

    with tempfile.TemporaryDirectory() as out:
        paths = darkplex.run_preset("fig2a", out, overrides=["cmt.g_d=0.3"])
        assert any(str(p).endswith("fig2a.csv") for p in paths)
        with open(os.path.join(out, "fig2a.csv")) as f:
            assert f.readline().startswith("# columns: probe.omega")
        spec = 'model = "cmt"\noutput = "gd.csv"\n[axis]\npath = "cmt.g_d"\nstart = 0.0\nstop = 0.4\npoints = 5\n'
        (path,) = darkplex.run_sweep(spec, out_dir=out)
        with open(path) as f:
            assert len(f.read().splitlines()) == 7
        try:
            darkplex.run_sweep(spec.replace("g_d", "gd"), out_dir=out)
        except ValueError as e:
            assert "cmt.g_d" in str(e)
        else:
            raise AssertionError("bad path accepted")

    assert not math.isnan(s_full)
    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
