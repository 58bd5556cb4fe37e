import csv
import hashlib
import json

import pytest
from typer.testing import CliRunner

from src.cli import app

runner = CliRunner()


def _rows(path):
    with path.open(encoding="utf-8") as f:
        return list(csv.DictReader(f))


def test_gap_sweep_single_point(tmp_path):
    result = runner.invoke(app, ["gap-sweep", "--points", "1", "--u-min", "1.5", "--u-max", "1.5", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    rows = _rows(tmp_path / "gap_sweep.csv")
    assert len(rows) == 1
    assert rows[0]["converged"] == "true"
    assert float(rows[0]["U_over_Uc"]) == 1.5


def test_gap_sweep_is_byte_deterministic(tmp_path):
    args = ["gap-sweep", "--points", "3", "--u-min", "0.8", "--u-max", "2.4"]
    first, second = tmp_path / "a", tmp_path / "b"
    assert runner.invoke(app, [*args, "--out", str(first)]).exit_code == 0
    assert runner.invoke(app, [*args, "--out", str(second)]).exit_code == 0
    assert (first / "gap_sweep.csv").read_bytes() == (second / "gap_sweep.csv").read_bytes()


def test_meta_records_hashes_and_tolerances(tmp_path):
    result = runner.invoke(
        app, ["gap-sweep", "--points", "2", "--u-min", "1.0", "--u-max", "3.0", "--tol-gap", "1e-11", "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    meta = json.loads((tmp_path / "gap_sweep.meta.json").read_text(encoding="utf-8"))
    digest = hashlib.sha256((tmp_path / "gap_sweep.csv").read_bytes()).hexdigest()
    assert meta["sha256"] == {"gap_sweep.csv": digest}
    assert meta["tolerances"]["gap"] == 1e-11
    assert meta["unit_mode"] == "dimensionless"
    assert meta["tool"] == "crossover"
    assert 1.0 < meta["mu_zero_U_over_Uc"] < 3.0


def test_floats_are_written_with_seventeen_digits(tmp_path):
    runner.invoke(app, ["gap-sweep", "--points", "1", "--u-min", "2.0", "--u-max", "2.0", "--out", str(tmp_path)])
    row = _rows(tmp_path / "gap_sweep.csv")[0]
    mantissa = row["mu_over_epsF"].lstrip("-").split("e")[0].replace(".", "").lstrip("0")
    assert len(mantissa) >= 15


def test_bound_state_table(tmp_path):
    result = runner.invoke(app, ["bound-state", "--points", "3", "--u-min", "0.5", "--u-max", "2.0", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    rows = _rows(tmp_path / "bound_state.csv")
    assert [r["bound"] for r in rows] == ["false", "true", "true"]
    assert rows[0]["E_b_over_eps0"] == "nan"
    numeric, closed = float(rows[2]["E_b_over_eps0"]), float(rows[2]["E_b_closed_over_eps0"])
    assert closed == pytest.approx(2.0)
    assert numeric == pytest.approx(closed, rel=1e-6)


def test_phase_diagram_writes_boundary_and_mu_axis(tmp_path):
    result = runner.invoke(
        app,
        [
            "phase-diagram", "--points", "4", "--u-min", "0.5", "--u-max", "4.0", "--e-c", "0.01",
            "--g-points", "5", "--mu-points", "6", "--out", str(tmp_path),
        ],
    )
    assert result.exit_code == 0, result.output
    assert len(_rows(tmp_path / "phase_diagram.csv")) == 4 * 5
    boundary = _rows(tmp_path / "boundary.csv")
    assert len(boundary) == 4
    assert all(abs(float(r["E_J_over_2E_c"]) - 1.0) <= 1e-9 for r in boundary)
    assert len(_rows(tmp_path / "mu_axis.csv")) == 6


def test_zero_g_points_is_a_config_error(tmp_path):
    result = runner.invoke(app, ["phase-diagram", "--g-points", "0", "--out", str(tmp_path)])
    assert result.exit_code == 3
    assert not (tmp_path / "phase_diagram.csv").exists()


def test_unknown_unit_mode_is_a_config_error(tmp_path):
    result = runner.invoke(app, ["gap-sweep", "--units", "furlongs", "--out", str(tmp_path)])
    assert result.exit_code == 3
