"""CSV and JSON writers plus run manifests."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from . import __version__


def fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def records_csv(records) -> str:
    records = list(records)
    if not records:
        return ""
    header = list(records[0])
    return csv_text(header, ([r[k] for k in header] for r in records))


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def json_text(obj) -> str:
    return json.dumps(_clean(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def manifest_path(data_path: str | Path) -> Path:
    p = Path(data_path)
    return p.with_name(p.name + ".manifest.json")


def write_output(text: str, out: str | None, manifest: dict | None = None) -> None:
    """Write ``text`` to ``out`` (stdout when None) and its manifest next to it."""
    if out is None:
        print(text, end="")
        return
    p = Path(out)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    if manifest is not None:
        with open(manifest_path(p), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json_text(manifest))


def make_manifest(subcommand: str, argv: list, parameters: dict, duration: float) -> dict:
    return {
        "subcommand": subcommand,
        "argv": list(argv),
        "parameters": parameters,
        "tool": "qergo",
        "version": __version__,
        "duration_s": duration,
    }


def read_manifest(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
