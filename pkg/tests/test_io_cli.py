import json
from pathlib import Path

import numpy as np
import pytest

from nlwave import io, model
from nlwave import grid as sg
from nlwave.cli import EXIT_BLOWUP, EXIT_CONFIG, EXIT_OK, run_command
from nlwave.diagnostics import DiagnosticsRow, DiagnosticsSeries

GOLDEN = Path(__file__).parent / "golden"


def golden(name):
    return (GOLDEN / name).read_text().splitlines()[0]


def test_diagnostics_round_trip_and_header(tmp_path):
    s = DiagnosticsSeries()
    s.append(DiagnosticsRow(0.0, 1 / 3, -2e-17, np.pi, -np.e, 1.0, 0.1 + 0.2, 1e-300))
    s.append(DiagnosticsRow(0.1, 2 / 7, 5.0, 1e10, 3.0, 0.5, 0.25, 0.0))
    path = io.write_diagnostics(s, tmp_path / "d.csv")
    assert path.read_text().splitlines()[0] == golden("diagnostics_header.csv") == io.DIAGNOSTICS_HEADER
    assert io.read_diagnostics(path).rows == s.rows


def test_gamma_header(tmp_path):
    path = io.write_gamma([0.0, 1.0], [-2.3, -2.1], tmp_path / "g.csv")
    assert path.read_text().splitlines()[0] == golden("gamma_header.csv")


def test_formatting_is_locale_free_17_digits():
    assert io.fmt(0.1) == "0.10000000000000001"
    assert float(io.fmt(1 / 3)) == 1 / 3
    assert "," not in io.fmt(1234567.5)


def test_snapshots_file(tmp_path):
    g = sg.make_grid(30.0, 64)
    psi = np.exp(-g.x**2)
    path = io.write_snapshots([(0.0, psi), (0.5, 2 * psi)], g, tmp_path / "s.csv")
    header, data = io.read_table(path)
    assert ",".join(header) == golden("snapshots_header.csv")
    assert data.shape == (64, 3)
    np.testing.assert_array_equal(data[:, 0], g.x)
    np.testing.assert_array_equal(data[:, 1], psi)


def test_write_diagnostics_rejects_empty(tmp_path):
    with pytest.raises(ValueError):
        io.write_diagnostics(DiagnosticsSeries(), tmp_path / "d.csv")


def small(*extra):
    return ["--N", "256", "--tmax", "0.2", "--dt", "1e-3", *extra]


def test_cli_simulate_writes_outputs(tmp_path):
    out = tmp_path / "run"
    assert run_command(["simulate", "--preset", "focusing", "--out", str(out), *small("--plots")]) == EXIT_OK
    diag = io.read_diagnostics(out / "diagnostics.csv")
    assert diag.t[0] == 0 and diag.t[-1] == 0.2
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["blowup"] is None
    assert manifest["derived"]["dt"] == 1e-3
    assert manifest["derived"]["dx"] == pytest.approx(60 / 256)
    header, data = io.read_table(out / "snapshots.csv")
    assert header[1] == "psi@0.000000"
    assert len(header) == 1 + len(manifest["config"]["outputs"]["snapshot_times"])
    g = sg.make_grid(30.0, 256)
    np.testing.assert_array_equal(data[:, 1], np.exp(-g.x**2))
    for name in ("snapshots.svg", "heatmap.svg", "spectrum.svg"):
        assert (out / "plots" / name).exists()


def test_cli_rerun_from_manifest_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_command(["simulate", "--preset", "defocusing", "--out", str(a), *small()]) == EXIT_OK
    assert run_command(["simulate", "--config", str(a / "manifest.json"), "--out", str(b)]) == EXIT_OK
    assert (a / "diagnostics.csv").read_bytes() == (b / "diagnostics.csv").read_bytes()
    assert (a / "snapshots.csv").read_bytes() == (b / "snapshots.csv").read_bytes()


def test_cli_blowup_exit_code_and_cross_file_consistency(tmp_path):
    out = tmp_path / "bu"
    code = run_command(["simulate", "--preset", "blowup", "--N", "128", "--out", str(out)])
    assert code == EXIT_BLOWUP
    manifest = json.loads((out / "manifest.json").read_text())
    record = manifest["blowup"]
    assert record["trigger"] in ("overflow", "non-finite")
    assert record["t_blow"] <= 2.0
    diag = io.read_diagnostics(out / "diagnostics.csv")
    assert diag.t[-1] == record["t_blow"]


def test_cli_config_errors(tmp_path):
    assert run_command(["simulate", "--sigma", "0", "--out", str(tmp_path)]) == EXIT_CONFIG
    assert run_command(["simulate", "--N", "7", "--out", str(tmp_path)]) == EXIT_CONFIG
    assert run_command(["nonsense"]) == EXIT_CONFIG
    bad = tmp_path / "bad.json"
    bad.write_text('{"params": {"alpha1": 1, "alpha2": 1, "alpha3": 1, "sigma": 2}, "extra": 1}')
    assert run_command(["simulate", "--config", str(bad), "--out", str(tmp_path)]) == EXIT_CONFIG
    assert run_command(["simulate", "--config", str(tmp_path / "missing.json")]) == EXIT_CONFIG


def test_cli_twave_row(tmp_path, capsys):
    assert run_command(["twave", "--c", "2", "--alpha1", "1", "--alpha2", "3", "--out", str(tmp_path)]) == EXIT_OK
    assert "1.7320508" in capsys.readouterr().out
    row = (tmp_path / "twave.csv").read_text().splitlines()[1].split(",")
    assert float(row[3]) == pytest.approx(3**0.5, abs=1e-12)
    assert float(row[4]) == pytest.approx(-(3**0.5), abs=1e-12)


def test_cli_dispersion_table(tmp_path):
    assert run_command(["dispersion", "--out", str(tmp_path), "--kmax", "1.0", "--nk", "11", "--plots"]) == EXIT_OK
    header, data = io.read_table(tmp_path / "dispersion.csv")
    assert header == ("k", "omega_squared", "group_velocity", "phase_velocity", "kdv_omega")
    row = data[np.argmin(np.abs(data[:, 0] - 0.5))]
    np.testing.assert_allclose(row, [0.5, 0.0625, -1.0, 0.5, 0.375], atol=1e-12)
    beyond = data[data[:, 0] > 0.6]
    assert np.all(np.isnan(beyond[:, 2])) and np.all(np.isnan(beyond[:, 3]))
    assert np.isnan(data[0, 3])  # k = 0
    assert (tmp_path / "plots" / "dispersion.svg").exists()


def test_cli_perturb(tmp_path):
    out = tmp_path / "p"
    code = run_command(["perturb", "--preset", "perturb-short", "--out", str(out), *small()])
    assert code == EXIT_OK
    header, data = io.read_table(out / "gamma.csv")
    assert header == ("t", "gamma")
    assert data[0, 1] == pytest.approx(-2.3239, abs=1e-3)
    assert (out / "diagnostics_perturbed.csv").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["derived"]["k_p_snapped"] == pytest.approx(19 * np.pi / 30)


def test_cli_perturb_requires_perturbation(tmp_path):
    assert run_command(["perturb", "--preset", "focusing", "--out", str(tmp_path), *small()]) == EXIT_CONFIG


def test_cli_spectrum(tmp_path):
    assert run_command(["spectrum", "--preset", "focusing", "--out", str(tmp_path), *small()]) == EXIT_OK
    header, data = io.read_table(tmp_path / "spectrum.csv")
    assert header == ("k", "abs_psi_hat", "relative")
    assert np.all(np.diff(data[:, 0]) > 0)
    assert data[:, 2].max() == 1.0


def test_cli_converge(tmp_path):
    args = ["converge", "--preset", "focusing", "--out", str(tmp_path), "--N", "256", "--tmax", "0.2",
            "--dt-levels", "0.02,0.01,0.005", "--reference-dt", "0.001"]
    assert run_command(args) == EXIT_OK
    report = json.loads((tmp_path / "convergence.json").read_text())
    assert report["temporal_order"] == pytest.approx(4.0, abs=0.3)


def test_energy_written_matches_model(tmp_path):
    out = tmp_path / "e"
    run_command(["simulate", "--preset", "focusing", "--out", str(out), *small()])
    diag = io.read_diagnostics(out / "diagnostics.csv")
    g = sg.make_grid(30.0, 256)
    e0 = model.energy(model.ModelParams(1, 1, 1, 2), g, model.FieldPair(np.exp(-g.x**2), np.zeros(256)))
    assert diag.column("energy")[0] == pytest.approx(e0, rel=1e-15)
