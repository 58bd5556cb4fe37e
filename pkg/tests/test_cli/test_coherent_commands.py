import csv
import json
import math

import pytest
from typer.testing import CliRunner

from src.cli import app

runner = CliRunner()


def _rows(path):
    with path.open(encoding="utf-8") as f:
        return list(csv.DictReader(f))


def test_overlap_table(tmp_path):
    result = runner.invoke(app, ["overlap", "--modes", "20", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    rows = _rows(tmp_path / "overlap.csv")
    assert len(rows) == 20
    rate = -math.log(math.sqrt(0.5))
    assert all(abs(float(r["bcs_rate"]) - rate) <= 1e-12 for r in rows)
    assert float(rows[-1]["bec_abs"]) < float(rows[0]["bec_abs"])


def test_eta_with_fock_oracle(tmp_path):
    result = runner.invoke(
        app, ["eta", "--points", "2", "--u-min", "1.0", "--u-max", "2.0", "--k-points", "6", "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.output
    low, high = json.loads((tmp_path / "eta.meta.json").read_text(encoding="utf-8"))["eta_mean_range"]
    assert (low, high) == (0.0, 2.0)
    for row in _rows(tmp_path / "eta.csv"):
        assert abs(float(row["eta_mean"]) - float(row["oracle_mean"])) <= 1e-12
        assert low <= float(row["eta_mean"]) <= high


def test_pegg_barnett_defaults(tmp_path):
    result = runner.invoke(app, ["pegg-barnett", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    deviations = [float(r["deviation"]) for r in _rows(tmp_path / "pegg_barnett.csv")]
    assert deviations[0] <= 0.05
    assert deviations[0] > deviations[1] > deviations[2]


def test_phase_lock_single_run(tmp_path):
    result = runner.invoke(app, ["phase-lock", "--runs", "1", "--seed", "7", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    (row,) = _rows(tmp_path / "phase_lock.csv")
    assert row["seed"] == "7"
    assert row["converged"] == "true"
    assert float(row["phase_spread"]) < 1e-4
    assert float(row["order_parameter_phase_spread"]) < 1e-4


def test_phase_lock_rejects_zero_sign(tmp_path):
    result = runner.invoke(app, ["phase-lock", "--g-sign", "0", "--out", str(tmp_path)])
    assert result.exit_code == 3


def test_chain_table(tmp_path):
    result = runner.invoke(app, ["chain", "--e-c", "50", "--segments", "5", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    rows = _rows(tmp_path / "chain.csv")
    assert [r["coherence"] for r in rows] == ["local", "local", "boundary", "global", "global"]
    for row in rows:
        assert float(row["Delta_bar"]) == pytest.approx(0.3)
        assert float(row["odlro_slope"]) == pytest.approx(-float(row["sigma2"]), abs=1e-12)
        assert abs(float(row["oracle_variance"]) / float(row["sigma2_oscillator"]) - 1.0) <= 1e-6
