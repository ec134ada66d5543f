"""JSON file formats for matrices, projections, tangent vectors and sampled paths.

A matrix file looks like::

    {"schema_version": "1", "kind": "projection", "n": 2, "rank": 1,
     "entries": [[0.5, 0.0], [0.5, 0.0], [0.5, 0.0], [0.5, 0.0]]}

``entries`` is row-major, each entry a ``[re, im]`` pair of numbers (decimal
strings are accepted on read).  Tangent files embed their base projection
under ``base``.  Floats are written with Python's shortest round-trip repr,
so writing and reading back is bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .manifold import Projection, TangentVector, make_projection, make_tangent
from .triple_core import DEFAULT_TOL

SCHEMA_VERSION = "1"
KINDS = ("matrix", "projection", "tangent")


def _entries(m: np.ndarray) -> list:
    if not np.all(np.isfinite(m)):
        raise SchemaError("cannot serialize non-finite entries")
    return [[float(z.real), float(z.imag)] for z in np.asarray(m, dtype=complex).ravel()]


def to_obj(value, kind: str | None = None) -> dict:
    """Schema object for an ndarray, :class:`Projection` or :class:`TangentVector`."""
    if isinstance(value, Projection):
        obj = {"schema_version": SCHEMA_VERSION, "kind": "projection", "n": value.n,
               "rank": value.rank, "entries": _entries(value.matrix)}
    elif isinstance(value, TangentVector):
        obj = {"schema_version": SCHEMA_VERSION, "kind": "tangent", "n": value.base.n,
               "base": to_obj(value.base), "entries": _entries(value.matrix)}
    else:
        m = np.asarray(value, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise SchemaError(f"expected a square matrix, got shape {m.shape}")
        obj = {"schema_version": SCHEMA_VERSION, "kind": "matrix", "n": m.shape[0],
               "entries": _entries(m)}
    if kind is not None and kind != obj["kind"]:
        raise SchemaError(f"cannot write a {obj['kind']} as kind {kind!r}")
    return obj


def _number(x) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise SchemaError(f"entry component {x!r} is not a number")
    try:
        value = float(x)
    except ValueError as exc:
        raise SchemaError(f"entry component {x!r} is not a number") from exc
    if not np.isfinite(value):
        raise SchemaError("non-finite entry")
    return value


def _matrix_from_obj(obj: dict) -> np.ndarray:
    if not isinstance(obj, dict):
        raise SchemaError("matrix object must be a JSON object")
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {obj.get('schema_version')!r}")
    if obj.get("kind") not in KINDS:
        raise SchemaError(f"kind must be one of {KINDS}, got {obj.get('kind')!r}")
    n = obj.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    entries = obj.get("entries")
    if not isinstance(entries, list) or len(entries) != n * n:
        raise SchemaError(f"entries must be a list of n^2 = {n * n} [re, im] pairs")
    vals = np.empty(n * n, dtype=complex)
    for idx, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(f"entry {idx} is not a [re, im] pair")
        vals[idx] = complex(_number(pair[0]), _number(pair[1]))
    return vals.reshape(n, n)


def from_obj(obj: dict, tol: float = DEFAULT_TOL):
    """Inverse of :func:`to_obj`; projection and tangent kinds are re-validated."""
    m = _matrix_from_obj(obj)
    kind = obj["kind"]
    if kind == "matrix":
        return m
    if kind == "projection":
        rank = obj.get("rank")
        if isinstance(rank, bool) or not isinstance(rank, int):
            raise SchemaError("kind 'projection' requires an integer rank")
        p = make_projection(m, tol)
        if p.rank != rank:
            raise SchemaError(f"declared rank {rank} but the matrix has rank {p.rank}")
        return p
    if "base" not in obj:
        raise SchemaError("kind 'tangent' requires an embedded base")
    base_obj = obj["base"]
    base = from_obj(base_obj, tol)
    if not isinstance(base, Projection):
        base = make_projection(base, tol)
    if base.n != m.shape[0]:
        raise SchemaError("tangent and base dimensions differ")
    return make_tangent(base, m, tol)


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc


def write_json(obj: dict, path) -> None:
    text = json.dumps(obj, allow_nan=False, indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_matrix(path, tol: float = DEFAULT_TOL):
    """Read a matrix file; returns an ndarray, :class:`Projection` or :class:`TangentVector`."""
    return from_obj(read_json(path), tol)


def write_matrix(value, path, kind: str | None = None) -> None:
    write_json(to_obj(value, kind), path)


def path_obj(samples, meta: dict) -> dict:
    """PathFile object from ``(t, projection)`` pairs and a ``meta`` mapping."""
    ts = [float(t) for t, _ in samples]
    if any(t1 <= t0 for t0, t1 in zip(ts, ts[1:])):
        raise SchemaError("path sample times must be strictly increasing")
    out_meta = {}
    for key, value in meta.items():
        if isinstance(value, (Projection, TangentVector)):
            out_meta[key] = to_obj(value)
        elif isinstance(value, (np.ndarray, list, tuple)):
            out_meta[key] = [float(x) for x in np.ravel(value)]
        else:
            out_meta[key] = float(value) if isinstance(value, (np.floating, float)) else value
    return {
        "schema_version": SCHEMA_VERSION,
        "samples": [{"t": t, "projection": to_obj(p)} for t, (_, p) in zip(ts, samples)],
        "meta": out_meta,
    }


def write_path(samples, meta: dict, path) -> None:
    write_json(path_obj(samples, meta), path)


def read_path(path, tol: float = DEFAULT_TOL) -> tuple[list, dict]:
    """Read a PathFile; returns ``([(t, Projection), ...], meta)`` with meta matrices decoded."""
    obj = read_json(path)
    if not isinstance(obj, dict) or obj.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError("unsupported or missing schema_version")
    raw = obj.get("samples")
    if not isinstance(raw, list):
        raise SchemaError("samples must be a list")
    samples = []
    for item in raw:
        if not isinstance(item, dict) or "t" not in item or "projection" not in item:
            raise SchemaError("each sample needs 't' and 'projection'")
        p = from_obj(item["projection"], tol)
        if not isinstance(p, Projection):
            raise SchemaError("path samples must be of kind 'projection'")
        samples.append((_number(item["t"]), p))
    ts = [t for t, _ in samples]
    if any(t1 <= t0 for t0, t1 in zip(ts, ts[1:])):
        raise SchemaError("path sample times must be strictly increasing")
    meta = dict(obj.get("meta") or {})
    for key in ("source", "target"):
        if isinstance(meta.get(key), dict):
            meta[key] = from_obj(meta[key], tol)
    return samples, meta
