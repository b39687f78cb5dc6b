"""Embedding CSV files: ``node_id,c1,...`` under a one-line comment header."""

import hashlib
import json
import os

import numpy as np

from .._io import atomic_write_text, fmt
from ..errors import ParseError
from ._types import Embedding


def config_hash(config):
    """Short stable digest of a JSON-serializable config."""
    blob = json.dumps(config, sort_keys=True, default=str, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def write_embedding_csv(emb, path):
    cols = ",".join(f"c{j + 1}" for j in range(emb.n_dim))
    ids = emb.index if emb.index is not None else np.arange(emb.n_points)
    lines = [f"# automanifold embedding v1; method={emb.method}; "
             f"config={config_hash(emb.config)}; seed={emb.seed}; "
             f"rows={'all' if emb.index is None else 'subset'}",
             f"node_id,{cols}"]
    for i, row in zip(ids, emb.coords):
        lines.append(f"{int(i)}," + ",".join(fmt(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_embedding_csv(path):
    """Inverse of :func:`write_embedding_csv` (config is not recoverable)."""
    with open(os.fspath(path)) as fh:
        raw = [ln.strip() for ln in fh if ln.strip()]
    meta = {}
    if raw and raw[0].startswith("#"):
        for part in raw.pop(0)[1:].split(";"):
            if "=" in part:
                key, val = part.split("=", 1)
                meta[key.strip()] = val.strip()
    if not raw or not raw[0].startswith("node_id"):
        raise ParseError("missing node_id header", row=1)
    width = len(raw[0].split(","))
    ids, rows = [], []
    for lineno, line in enumerate(raw[1:], start=2):
        cells = line.split(",")
        if len(cells) != width:
            raise ParseError(f"expected {width} columns, found {len(cells)}", row=lineno)
        try:
            ids.append(int(cells[0]))
            rows.append([float(c) for c in cells[1:]])
        except ValueError as exc:
            raise ParseError(f"bad cell: {exc}", row=lineno) from None
    if not rows:
        raise ParseError("no embedding rows")
    ids = np.array(ids)
    seed = meta.get("seed")
    subset = meta.get("rows") == "subset" or not np.array_equal(ids, np.arange(ids.size))
    index = ids if subset else None
    return Embedding(np.array(rows), meta.get("method", "unknown"),
                     seed=None if seed in (None, "None") else int(seed), index=index)
