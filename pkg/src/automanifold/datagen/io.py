"""CSV dataset files.

Layout::

    # automanifold dataset v1; source=<label>; grid=<n,xmin,xmax,periodic>
    t,u_1,...,u_d
    ...

The ``t`` column is optional on input.  Lines starting with ``#`` are
comments; only the first one is interpreted as the header.
"""

import os

import numpy as np

from .._io import atomic_write_text, fmt
from ..errors import ParseError
from ._types import SpatialGrid, TimeSeriesDataset

HEADER_TAG = "automanifold dataset v1"


def dataset_header(ds):
    grid = ds.grid.header() if isinstance(ds.grid, SpatialGrid) else "unstructured"
    return f"# {HEADER_TAG}; source={ds.source}; grid={grid}"


def write_dataset_csv(ds, path, time_column=True):
    lines = [dataset_header(ds)]
    for t, row in zip(ds.times, ds.values):
        cells = [fmt(v) for v in row]
        if time_column:
            cells.insert(0, fmt(t))
        lines.append(",".join(cells))
    atomic_write_text(path, "\n".join(lines) + "\n")


def _parse_header(line):
    meta = {}
    body = line.lstrip("#").strip()
    parts = [p.strip() for p in body.split(";")]
    if not parts or parts[0] != HEADER_TAG:
        return None
    for part in parts[1:]:
        key, _, value = part.partition("=")
        meta[key.strip()] = value.strip()
    return meta


def _grid_from_meta(value):
    if value is None or value == "unstructured":
        return "unstructured"
    try:
        n, xmin, xmax, periodic = value.split(",")
        return SpatialGrid(int(n), float(xmin), float(xmax), periodic.strip().lower() == "true")
    except ValueError as exc:
        raise ParseError(f"bad grid field {value!r}", row=1) from exc


def load_csv_matrix(path, has_time_column=None):
    """Read a rectangular numeric CSV, one row per time point.

    ``has_time_column=None`` means: a leading time column is present iff
    the file carries the automanifold header.  Without one, times are
    ``0, 1, 2, ...``.
    """
    path = os.fspath(path)
    with open(path) as fh:
        raw = fh.read().splitlines()
    meta = None
    rows = []
    width = None
    for lineno, line in enumerate(raw, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if meta is None and not rows:
                meta = _parse_header(stripped)
            continue
        cells = stripped.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(f"expected {width} columns, found {len(cells)}", row=lineno)
        try:
            values = [float(c) for c in cells]
        except ValueError:
            for col, c in enumerate(cells, start=1):
                try:
                    float(c)
                except ValueError:
                    raise ParseError(f"non-numeric cell {c.strip()!r}", row=lineno,
                                     column=col) from None
        for col, v in enumerate(values, start=1):
            if not np.isfinite(v):
                raise ParseError("non-finite cell", row=lineno, column=col)
        rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    data = np.array(rows, dtype=np.float64)
    if has_time_column is None:
        has_time_column = meta is not None
    if has_time_column:
        if data.shape[1] < 2:
            raise ParseError("a time column needs at least one data column", column=1)
        times, values = data[:, 0], data[:, 1:]
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ParseError("time column must be strictly increasing", column=1)
    else:
        times, values = np.arange(data.shape[0], dtype=np.float64), data
    meta = meta or {}
    return TimeSeriesDataset(times, values, _grid_from_meta(meta.get("grid")),
                             meta.get("source", os.path.basename(path)))
