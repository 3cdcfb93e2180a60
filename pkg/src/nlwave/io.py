"""Deterministic CSV / JSON writers for run outputs."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .diagnostics import COLUMNS, DiagnosticsRow, DiagnosticsSeries

DIAGNOSTICS_HEADER = ",".join(COLUMNS)
GAMMA_HEADER = "t,gamma"


def fmt(value) -> str:
    """17 significant digits: enough to round-trip any double."""
    return format(float(value), ".17g")


def snapshot_label(t) -> str:
    return f"psi@{float(t):.6f}"


def _write_lines(path, lines):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def write_table(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    return _write_lines(path, lines)


def write_diagnostics(series: DiagnosticsSeries, path):
    if len(series) == 0:
        raise ValueError("cannot write an empty diagnostics series")
    return write_table(path, COLUMNS, series.rows)


def read_diagnostics(path) -> DiagnosticsSeries:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != COLUMNS:
            raise ValueError(f"unexpected diagnostics header {header}")
        series = DiagnosticsSeries()
        for row in reader:
            series.append(DiagnosticsRow(*(float(v) for v in row)))
    return series


def write_gamma(times, gamma, path):
    return write_table(path, ("t", "gamma"), zip(times, gamma))


def read_table(path):
    """Header tuple and float array of a CSV written by this module."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        data = np.array([[float(v) for v in row] for row in reader], dtype=float)
    return header, data


def write_snapshots(snapshots, grid, path):
    header = ["x"] + [snapshot_label(t) for t, _ in snapshots]
    cols = [grid.x] + [np.asarray(psi) for _, psi in snapshots]
    return write_table(path, header, zip(*cols))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else repr(v)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def write_json(path, doc):
    return _write_lines(path, [json.dumps(_jsonable(doc), indent=2, sort_keys=True)])
