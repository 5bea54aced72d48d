"""File formats.

* CSV matrix: comma separated, row major, one row per line, no header.
* JSON matrix: a list of rows, or ``{"matrix": [[...], ...]}``.
* JSON points: ``{"space": ..., "points": [[...], ...]}``.
* Edge list: first line ``"n m"``, then ``m`` lines ``"u v"`` (1-based).
* Report: ``{"measure": name, "params": {...}, "value": number | "-inf"}``.
"""

import json
import math
from pathlib import Path

import numpy as np

from .core import (
    DistanceMatrix,
    PointConfiguration,
    SimilarityMatrix,
    validate_distance_matrix,
    validate_similarity_matrix,
)
from .errors import InvalidPoints, ParseError


def value_to_json(value):
    """Map a measure value to JSON; infinities become strings."""
    value = float(value)
    if math.isinf(value):
        return "-inf" if value < 0 else "inf"
    if math.isnan(value):
        return "nan"
    return value


def value_from_json(value):
    return float(value)


def parse_csv_matrix(text):
    rows = []
    width = None
    for lineno, line in enumerate(text.rstrip().splitlines(), start=1):
        if not line.strip():
            raise ParseError(lineno, "empty line")
        try:
            row = [float(tok) for tok in line.split(",")]
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(lineno, f"expected {width} values, got {len(row)}")
        rows.append(row)
    if not rows:
        raise ParseError(1, "no data")
    return np.array(rows, dtype=float)


def format_csv_matrix(matrix):
    m = np.asarray(matrix, dtype=float)
    return "".join(",".join(repr(float(x)) for x in row) + "\n" for row in m)


def _json_matrix(obj):
    if isinstance(obj, dict):
        obj = obj.get("matrix")
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ParseError(1, "JSON matrix must be a list of rows")
    width = len(obj[0]) if obj else 0
    for k, row in enumerate(obj, start=1):
        if len(row) != width:
            raise ParseError(k, f"expected {width} values, got {len(row)}")
    try:
        return np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(1, str(exc)) from None


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None


def read_raw_matrix(path):
    path = Path(path)
    if path.suffix.lower() == ".json":
        return _json_matrix(_read_json(path))
    return parse_csv_matrix(path.read_text())


def load_matrix(path, kind="distance", zero_tol=0.0):
    raw = read_raw_matrix(path)
    if kind == "distance":
        return validate_distance_matrix(raw, zero_tol=zero_tol)
    if kind == "similarity":
        return validate_similarity_matrix(raw)
    raise ValueError(f"kind must be 'distance' or 'similarity', got {kind!r}")


def load_points(path):
    obj = _read_json(path)
    if not isinstance(obj, dict) or "space" not in obj or "points" not in obj:
        raise ParseError(1, 'points file needs "space" and "points" keys')
    try:
        return PointConfiguration(obj["space"], obj["points"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidPoints):
            raise
        raise InvalidPoints(str(exc)) from None


def save_points(cfg, path):
    Path(path).write_text(json.dumps(cfg.to_json()) + "\n")


def save_matrix(matrix, path):
    if isinstance(matrix, DistanceMatrix):
        matrix = matrix.d
    elif isinstance(matrix, SimilarityMatrix):
        matrix = matrix.s
    Path(path).write_text(format_csv_matrix(matrix))


def load_edge_list(path):
    """Read an unweighted graph; returns an ``n x n`` boolean adjacency."""
    lines = [ln for ln in Path(path).read_text().splitlines()]
    if not lines:
        raise ParseError(1, "empty edge list")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise ParseError(1, 'header must be "n m"') from None
    adj = np.zeros((n, n), dtype=bool)
    body = lines[1:]
    if len([ln for ln in body if ln.strip()]) != m:
        raise ParseError(len(lines), f"expected {m} edges")
    for lineno, line in enumerate(body, start=2):
        if not line.strip():
            continue
        try:
            u, v = (int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(lineno, 'edge lines must be "u v"') from None
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise ParseError(lineno, f"invalid edge ({u}, {v})")
        adj[u - 1, v - 1] = adj[v - 1, u - 1] = True
    return adj


def save_edge_list(adj, path):
    adj = np.asarray(adj, dtype=bool)
    edges = [(i + 1, j + 1) for i, j in zip(*np.nonzero(np.triu(adj, 1)))]
    text = f"{adj.shape[0]} {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges)
    Path(path).write_text(text)


def make_report(measure, params, value):
    return {"measure": measure, "params": dict(params), "value": value_to_json(value)}


def save_report(report, path):
    Path(path).write_text(json.dumps(report, indent=2) + "\n")
