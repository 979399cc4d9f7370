"""CSV and JSON emission with fixed formatting.

Floats are written with ``%.12g`` so identical inputs give byte-identical
files. JSON reports carry ``schema_version`` "1".
"""

from __future__ import annotations

import csv
import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .grid import Density, SampledAmplitude
from .qcurve import EntropySeries

SCHEMA_VERSION = "1"
FLOAT_FORMAT = "%.12g"
AXIS_NAMES = ("x", "y", "z")


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return FLOAT_FORMAT % float(v)


@contextmanager
def open_output(path):
    """Yield a text stream: stdout for ``None`` or ``"-"``, else the file."""
    if path is None or str(path) == "-":
        yield sys.stdout
        return
    with open(path, "w", newline="") as fh:
        yield fh


def write_rows(stream, header, rows) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def columns_to_csv(columns: dict, path=None) -> None:
    """Write equal-length columns in the given key order."""
    header = list(columns)
    data = [np.asarray(columns[k]) for k in header]
    with open_output(path) as fh:
        write_rows(fh, header, zip(*data))


def _coords(grid, representation):
    nodes = grid.nodes(representation).reshape(-1, grid.dim)
    return [nodes[:, i] for i in range(grid.dim)]


def amplitude_to_csv(a: SampledAmplitude, path=None) -> None:
    """``index,x[,y,z],re,im`` in row-major node order."""
    if a.lead_shape:
        raise ValueError("CSV export supports scalar amplitudes only")
    flat = a.values.reshape(-1)
    cols = {"index": np.arange(flat.size)}
    cols.update(zip(AXIS_NAMES, _coords(a.grid, a.representation)))
    cols.update(re=flat.real, im=flat.imag)
    columns_to_csv(cols, path)


def density_to_csv(d: Density, path=None) -> None:
    """``index,x[,y,z],rho`` in row-major node order."""
    flat = d.values.reshape(-1)
    cols = {"index": np.arange(flat.size)}
    cols.update(zip(AXIS_NAMES, _coords(d.grid, d.representation)))
    cols["rho"] = flat
    columns_to_csv(cols, path)


def amplitude_metadata(a: SampledAmplitude) -> dict:
    return {"schema_version": SCHEMA_VERSION, "grid": a.grid.to_dict(),
            "representation": a.representation, "time": float(a.time)}


def read_amplitude_csv(path, grid) -> SampledAmplitude:
    """Read ``index,x,re,im`` rows back onto ``grid``."""
    rows = _read_dict_rows(path)
    re = np.array([float(r["re"]) for r in rows])
    im = np.array([float(r["im"]) for r in rows])
    if re.size != int(np.prod(grid.shape)):
        raise ValueError(f"expected {int(np.prod(grid.shape))} rows, found {re.size}")
    return SampledAmplitude(grid, (re + 1j * im).reshape(grid.shape))


def _read_dict_rows(path) -> list[dict]:
    text = Path(path).read_text()
    return list(csv.DictReader(io.StringIO(text)))


def read_series_csv(path, value_column: str = "s_total") -> EntropySeries:
    """Read a ``t,...,s_total`` CSV into an entropy series."""
    rows = _read_dict_rows(path)
    if not rows:
        raise ValueError("empty series file")
    missing = {"t", value_column} - set(rows[0])
    if missing:
        raise ValueError(f"series file lacks columns {sorted(missing)}")
    t = [float(r["t"]) for r in rows]
    v = [float(r[value_column]) for r in rows]
    return EntropySeries(t, v, {"source": str(path)})


def series_columns(s: EntropySeries, names) -> dict:
    """Columns ``t`` and ``s_total`` plus the requested ``meta`` entries."""
    cols = {"t": s.times}
    for n in names:
        cols[n] = s.values if n == "s_total" else s.meta[n]
    return cols


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(FLOAT_FORMAT % float(obj))
    return obj


def to_json(report: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION, **_jsonable(report)}
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def write_json(report: dict, path=None) -> None:
    with open_output(path) as fh:
        fh.write(to_json(report))
