import enum
import hashlib
import json
import math

from src.output import format_value, write_csv, write_meta


class _Color(str, enum.Enum):
    red = "red"


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(_Color.red) == "red"
    assert format_value(math.nan) == "nan"
    assert format_value(-math.inf) == "-inf"
    assert format_value(None) == ""
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(1 - 2j) == "1-2j"
    assert format_value(3) == "3"


def test_write_csv_returns_file_hash(tmp_path):
    path = tmp_path / "nested" / "t.csv"
    digest = write_csv(path, ["a", "b"], [{"a": 1, "b": 0.5, "extra": 9}, {"a": 2}])
    assert path.read_bytes() == b"a,b\n1,0.5\n2,\n"
    assert digest == hashlib.sha256(path.read_bytes()).hexdigest()


def test_write_meta(tmp_path):
    path = write_meta(
        tmp_path,
        "run",
        config={"units": "physical", "tol_gap": 1e-10, "tol_number": 1e-8},
        hashes={"t.csv": "abc"},
        wall_clock=0.25,
        extra={"note": 1},
    )
    meta = json.loads(path.read_text(encoding="utf-8"))
    assert path.name == "run.meta.json"
    assert meta["unit_mode"] == "physical"
    assert meta["tolerances"] == {"gap": 1e-10, "number": 1e-8}
    assert meta["sha256"] == {"t.csv": "abc"}
    assert meta["note"] == 1
    assert "version" in meta
