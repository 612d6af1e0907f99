"""Sweep machinery, serialization schemas, presets and the CLI contract."""

import json
import subprocess
import sys

import numpy as np
import pytest

from mollowpair.errors import SweepSpecError
from mollowpair.sweep import (
    GridSpec,
    SweepSpec,
    emit,
    load_preset,
    parse_json,
    preset_names,
    run_sweep,
)

REQUIRED_PRESETS = ("fig3a", "fig3b", "fig4", "fig5", "fig6", "fig8",
                    "fig9", "fig11", "fig12", "fig13")


def small_spec(**kw):
    defaults = dict(
        param="omega1",
        grid=GridSpec(min=0.01, max=100.0, count=3, scale="log"),
        fixed={"g": 1.0},
        observables=("populations",),
    )
    defaults.update(kw)
    return SweepSpec(**defaults)


# --- spec validation ---------------------------------------------------------

def test_grid_validation():
    with pytest.raises(SweepSpecError, match="count"):
        GridSpec(min=0.0, max=1.0, count=1)
    with pytest.raises(SweepSpecError, match="log"):
        GridSpec(min=0.0, max=1.0, count=5, scale="log")
    with pytest.raises(SweepSpecError, match="max > min"):
        GridSpec(min=2.0, max=1.0, count=5)


def test_spec_validation():
    with pytest.raises(SweepSpecError, match="unknown sweep parameter"):
        small_spec(param="rabi")
    with pytest.raises(SweepSpecError, match="also appears"):
        small_spec(fixed={"omega1": 1.0})
    with pytest.raises(SweepSpecError, match="unknown observable"):
        small_spec(observables=("brightness",))


def test_log_grid_endpoints():
    vals = GridSpec(min=0.25, max=2.0, count=4, scale="log").values()
    np.testing.assert_allclose(vals, [0.25, 0.5, 1.0, 2.0], rtol=1e-12)


# --- run_sweep ---------------------------------------------------------------

def test_populations_sweep_schema():
    result = run_sweep(small_spec())
    assert result.columns == ("omega1", "rho00", "rho10", "rho01", "rho11")
    assert len(result.rows) == 3
    for row in result.rows:
        assert sum(row[1:]) == pytest.approx(1.0, abs=1e-9)
    assert all(r == "coherent" for r in result.regimes)


def test_g2_null_marker_at_zero_drive():
    spec = small_spec(
        param="g",
        grid=GridSpec(min=0.1, max=1.0, count=2),
        fixed={"omega1": 0.0},
        observables=("g2",),
    )
    result = run_sweep(spec)
    assert all(row[1] is None for row in result.rows)
    assert all("undefined-correlator" in note for note in result.notes)


def test_fastpath_agrees_with_forced_numeric():
    spec = small_spec(observables=("populations", "g2"),
                      grid=GridSpec(min=0.05, max=20.0, count=7, scale="log"))
    fast = run_sweep(spec)
    slow = run_sweep(small_spec(observables=("populations", "g2"),
                                grid=GridSpec(min=0.05, max=20.0, count=7, scale="log"),
                                fastpath=False))
    assert "closed-form" in fast.paths[0] and "moments" in slow.paths[0]
    for rf, rs in zip(fast.rows, slow.rows):
        np.testing.assert_allclose(rf, rs, atol=1e-9)


def test_spectrum_sweep_blocks():
    spec = small_spec(observables=("spectrum",),
                      grid=GridSpec(min=1.0, max=2.0, count=2),
                      spectrum_points=201)
    result = run_sweep(spec)
    assert len(result.spectra) == 2
    assert result.columns == ("omega1", "delta_weight")
    for block, row in zip(result.spectra, result.rows):
        assert len(block.grid) == 201
        assert block.delta_weight == row[1]


def test_decomposition_sweep_blocks():
    spec = small_spec(observables=("decomposition",),
                      grid=GridSpec(min=1.0, max=2.0, count=2))
    result = run_sweep(spec)
    assert len(result.decompositions) == 2
    assert all(len(b.components) >= 3 for b in result.decompositions)


def test_eigenvalue_sweep_columns():
    spec = small_spec(observables=("eigenvalues",),
                      grid=GridSpec(min=1.0, max=2.0, count=2))
    result = run_sweep(spec)
    assert len(result.columns) == 1 + 30


# --- serialization -----------------------------------------------------------

def test_csv_deterministic_and_17_digits():
    spec = small_spec()
    a = emit(run_sweep(spec), "csv")
    b = emit(run_sweep(spec), "csv")
    assert a == b
    text = a.decode()
    assert "0.99991998336403021" in text  # 17 significant digits survive


def test_csv_header_only_without_observables():
    result = run_sweep(small_spec(observables=()))
    text = emit(result, "csv").decode()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    assert lines == ["omega1"]


def test_json_roundtrip():
    spec = small_spec(observables=("populations", "g2", "spectrum"),
                      grid=GridSpec(min=0.5, max=2.0, count=2),
                      spectrum_points=101)
    result = run_sweep(spec)
    again = parse_json(emit(result, "json"))
    assert again == result


def test_unknown_format_rejected():
    with pytest.raises(SweepSpecError, match="format"):
        emit(run_sweep(small_spec()), "xml")


# --- presets -----------------------------------------------------------------

def test_required_presets_exist():
    names = preset_names()
    for name in REQUIRED_PRESETS:
        assert name in names


@pytest.mark.parametrize("name", REQUIRED_PRESETS)
def test_preset_runs_end_to_end(name):
    spec = load_preset(name)
    if "spectrum" in spec.observables:
        spec = SweepSpec(param=spec.param, grid=spec.grid, fixed=spec.fixed,
                         observables=spec.observables, fastpath=spec.fastpath,
                         spectrum_points=401)
    result = run_sweep(spec)
    assert len(result.rows) == spec.grid.count
    payload = emit(result, "csv")
    assert payload.startswith(b"# {")


def test_fig3b_limits():
    result = run_sweep(load_preset("fig3b"))
    cols = {c: i for i, c in enumerate(result.columns)}
    last = result.rows[-1]
    for name, ref in (("rho00", 3 / 8), ("rho10", 3 / 8), ("rho01", 1 / 8), ("rho11", 1 / 8)):
        assert last[cols[name]] == pytest.approx(ref, abs=1e-4)


def test_fig5_trapping_limit():
    result = run_sweep(load_preset("fig5"))
    first = result.rows[0]
    assert first[1] == pytest.approx(0.5, abs=1e-3)


def test_unknown_preset_rejected():
    with pytest.raises(SweepSpecError, match="unknown preset"):
        load_preset("fig99")


# --- CLI ---------------------------------------------------------------------

def run_cli(*args, **kw):
    return subprocess.run([sys.executable, "-m", "mollowpair", *args],
                          capture_output=True, text=True, **kw)


def test_cli_sweep_to_stdout():
    proc = run_cli("--regime", "dissipative", "--set", "gamma=1",
                   "--sweep", "omega1:0.001:0.01:2:log",
                   "--observable", "populations")
    assert proc.returncode == 0
    lines = [ln for ln in proc.stdout.splitlines() if not ln.startswith("#")]
    assert lines[0] == "omega1,rho00,rho10,rho01,rho11"
    assert float(lines[1].split(",")[1]) == pytest.approx(0.5, abs=1e-3)


def test_cli_preset_to_file(tmp_path):
    out = tmp_path / "sweep.json"
    proc = run_cli("--preset", "fig6", "--format", "json", "--out", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == "mollowpair.sweep"


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "params.cfg"
    cfg.write_text("gamma = 1.0\ng = 0.5\ntheta = 1.5707963267948966\n")
    proc = run_cli("--config", str(cfg), "--sweep", "omega1:0.5:2:2:log",
                   "--observable", "g2")
    assert proc.returncode == 0
    assert "unidirectional-forward" in proc.stdout


def test_cli_validation_error_exit_2():
    proc = run_cli("--sweep", "omega1:1:2:1:linear", "--observable", "populations")
    assert proc.returncode == 2
    proc = run_cli("--sweep", "bogus:1:2:4:linear")
    assert proc.returncode == 2
    proc = run_cli("--set", "gamma=2", "--set", "gamma0=1",
                   "--sweep", "omega1:1:2:2:linear")
    assert proc.returncode == 2


def test_cli_numerical_error_exit_3():
    # decomposition at the defective one-way critical point, no fallback
    proc = run_cli("--regime", "unidirectional-forward", "--set", "gamma=1",
                   "--sweep", "omega1:0.125:0.125001:2:linear",
                   "--observable", "decomposition")
    assert proc.returncode == 3


def test_cli_io_error_exit_4(tmp_path):
    proc = run_cli("--preset", "fig6", "--out", str(tmp_path / "nodir" / "x.csv"))
    assert proc.returncode == 4


def test_cli_no_fastpath_flag():
    proc = run_cli("--regime", "coherent", "--set", "g=1",
                   "--sweep", "omega1:1:2:2:linear", "--observable", "g2",
                   "--no-fastpath")
    assert proc.returncode == 0
    assert "moments" in proc.stdout
