import csv
import enum
import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Mapping

from src.const import FLOAT_FORMAT, TOOL_NAME, TOOL_VERSION

log = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, FLOAT_FORMAT)
    if isinstance(value, complex):
        return f"{format(value.real, FLOAT_FORMAT)}{format(value.imag, '+' + FLOAT_FORMAT)}j"
    if value is None:
        return ""
    return str(value)


def write_csv(path: Path, fieldnames: list[str], rows: Iterable[Mapping[str, Any]]) -> str:
    """Пишет CSV с одной строкой заголовка и возвращает sha256 файла."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        w = csv.DictWriter(f, fieldnames=fieldnames, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: format_value(row.get(k)) for k in fieldnames})
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    log.debug("wrote %s (%s)", path, digest)
    return digest


def write_meta(
    directory: Path,
    name: str,
    *,
    config: Mapping[str, Any],
    hashes: Mapping[str, str],
    wall_clock: float,
    extra: Mapping[str, Any] | None = None,
) -> Path:
    path = directory / f"{name}.meta.json"
    payload = {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "config": dict(config),
        "unit_mode": config.get("units"),
        "tolerances": {"gap": config.get("tol_gap"), "number": config.get("tol_number")},
        "wall_clock_seconds": wall_clock,
        "sha256": dict(hashes),
    }
    if extra:
        payload.update(extra)
    directory.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    return path
