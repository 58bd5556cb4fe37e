from typer.testing import CliRunner

from src.cli import app

runner = CliRunner()


def test_list_prints_inventory_without_running(tmp_path):
    result = runner.invoke(app, ["checks", "--list", "--out", str(tmp_path)])
    assert result.exit_code == 0
    assert "pegg-barnett:" in result.output
    assert not (tmp_path / "checks.csv").exists()


def test_selected_checks_pass(tmp_path):
    result = runner.invoke(app, ["checks", "--only", "overlap-decay", "--only", "odlro-slope", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "PASS overlap-decay" in result.output
    assert (tmp_path / "checks.csv").read_text(encoding="utf-8").count("\n") == 3


def test_small_pegg_barnett_truncation_is_reported(tmp_path):
    result = runner.invoke(
        app, ["checks", "--only", "pegg-barnett", "--pegg-barnett-s", "2", "--out", str(tmp_path)]
    )
    assert result.exit_code == 1
    assert "WARNING pegg-barnett" in result.output
    assert "FAIL pegg-barnett" in result.output


def test_unknown_check_name(tmp_path):
    result = runner.invoke(app, ["checks", "--only", "bogus", "--out", str(tmp_path)])
    assert result.exit_code == 3
