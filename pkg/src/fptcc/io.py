"""Instance and clustering text formats, JSON reports, atomic writes.

Instance format::

    # comment
    p cc <n>
    <u> <v> +
    <u> <v> -

Unlisted pairs are unknown.  Clustering format: one cluster per line,
space-separated vertex ids.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import jsonschema
import numpy as np

from .exceptions import InputError, ParseError
from .graph import MINUS, PLUS, Clustering, SignedGraph

_SIGN_OF = {"+": PLUS, "-": MINUS}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["version", "n", "k", "bad_vertices", "partition", "clusters", "mistakes",
                 "config", "seed", "truncated", "runtime_ms"],
    "additionalProperties": False,
    "properties": {
        "version": {"type": "string"},
        "n": {"type": "integer", "minimum": 0},
        "k": {"type": "integer", "minimum": 0},
        "bad_vertices": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "partition": {"type": "array",
                      "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "clusters": {"type": "array",
                     "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "mistakes": {
            "type": "object",
            "required": ["positive", "negative", "total"],
            "additionalProperties": False,
            "properties": {k: {"type": "integer", "minimum": 0}
                           for k in ("positive", "negative", "total")},
        },
        "config": {
            "type": "object",
            "required": ["delta", "complete_solver", "cut_solver", "repeats",
                         "enum_max_subsets", "enum_max_size", "max_k"],
            "properties": {
                "delta": {"type": "string"},
                "complete_solver": {"enum": ["pivot", "exact"]},
                "cut_solver": {"enum": ["isolating", "exact"]},
                "repeats": {"type": "integer", "minimum": 1},
                "enum_max_subsets": {"type": "integer", "minimum": 1},
                "enum_max_size": {"type": ["integer", "null"], "minimum": 1},
                "max_k": {"type": "integer", "minimum": 0},
            },
        },
        "seed": {"type": "integer", "minimum": 0},
        "truncated": {"type": "boolean"},
        "exact_opt": {"type": "integer", "minimum": 0},
        "ratio": {"type": "number", "minimum": 0},
        "runtime_ms": {"type": "number", "minimum": 0},
    },
}


def parse_instance(text: str) -> SignedGraph:
    n = None
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 3 or parts[1] != "cc":
                raise ParseError(f"expected 'p cc <n>', got {line!r}", lineno)
            n = _int(parts[2], lineno)
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if n is None:
            raise ParseError("edge line before the 'p cc <n>' header", lineno)
        if len(parts) != 3 or parts[2] not in _SIGN_OF:
            raise ParseError(f"expected '<u> <v> <+|->', got {line!r}", lineno)
        u, v = _int(parts[0], lineno), _int(parts[1], lineno)
        if u == v:
            raise ParseError(f"self pair {u} {v}", lineno)
        for x in (u, v):
            if not 0 <= x < n:
                raise ParseError(f"vertex {x} out of range 0..{n - 1}", lineno)
        key = (min(u, v), max(u, v))
        if key in labels:
            raise ParseError(f"pair {key[0]} {key[1]} listed twice", lineno)
        labels[key] = _SIGN_OF[parts[2]]
    if n is None:
        raise ParseError("missing 'p cc <n>' header")
    m = np.zeros((n, n), dtype=np.int8)
    for (u, v), s in labels.items():
        m[u, v] = m[v, u] = s
    return SignedGraph(m)


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", lineno) from None


def write_instance(g: SignedGraph) -> str:
    lines = [f"p cc {g.n}"]
    m = g.matrix
    for u in range(g.n):
        row = m[u]
        for v in range(u + 1, g.n):
            if row[v] == PLUS:
                lines.append(f"{u} {v} +")
            elif row[v] == MINUS:
                lines.append(f"{u} {v} -")
    return "\n".join(lines) + "\n"


def read_instance(path) -> SignedGraph:
    return parse_instance(Path(path).read_text())


def parse_clustering(text: str, n: int) -> Clustering:
    clusters = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cluster = []
        for tok in line.split():
            v = _int(tok, lineno)
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} not in the instance (n={n})", lineno)
            if v in seen:
                raise ParseError(f"vertex {v} already placed on line {seen[v]}", lineno)
            seen[v] = lineno
            cluster.append(v)
        clusters.append(cluster)
    missing = sorted(set(range(n)) - set(seen))
    if missing:
        raise InputError(f"clustering leaves vertices unassigned: {missing[:10]}")
    return Clustering.from_clusters(clusters, n)


def write_clustering(c: Clustering) -> str:
    return "".join(" ".join(map(str, cl)) + "\n" for cl in c.clusters)


def validate_report(data: dict) -> None:
    jsonschema.validate(data, REPORT_SCHEMA)
    if data["mistakes"]["total"] != data["mistakes"]["positive"] + data["mistakes"]["negative"]:
        raise jsonschema.ValidationError("mistake total does not add up")


def report_json(report) -> str:
    data = report.to_dict()
    validate_report(data)
    return json.dumps(data, indent=2) + "\n"


def atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
