"""JSON relation files, witness files and report serialization.

Relation file::

    {"form": "kernel", "n": 2, "A": [[...], ...], "B": [[...], ...]}
    {"form": "range",  "n": 2, "C": [[...], ...], "D": [[...], ...]}

Witness file (for ``extend --method n-matrix|m-matrix``)::

    {"N": [[...]], "basis": {"eigenvalues": [...], "vectors": [[...]]}}
    {"M": [[...]]}

``basis`` is optional and pins the eigenvector matrix ``V`` used with ``N``.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from .linrel import LinearRelation, from_kernel, from_range, reduce_rows
from .numerics import DEFAULT_TOL, Tolerance, echelon_basis, orth_complement

FIXTURES = ("fix_id", "e61", "e62", "e63", "n_back2", "n_second", "n_identity")


class FileFormatError(ValueError):
    """Malformed relation or witness document."""


def _matrix(doc: dict, key: str, cols: int | None = None) -> np.ndarray:
    if key not in doc:
        raise FileFormatError(f"missing field {key!r}")
    rows = doc[key]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FileFormatError(f"{key} must be a list of rows")
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise FileFormatError(f"{key} has ragged rows")
    for r in rows:
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise FileFormatError(f"{key} has a non-numeric or non-finite entry: {v!r}")
    width = widths.pop() if widths else (cols or 0)
    if cols is not None and width != cols:
        raise FileFormatError(f"{key} must have {cols} columns, got {width}")
    return np.array(rows, dtype=np.float64).reshape(len(rows), width)


def parse_relation(doc: dict, tol: Tolerance = DEFAULT_TOL, reduce: bool = False) -> LinearRelation:
    if not isinstance(doc, dict):
        raise FileFormatError("relation file must be a JSON object")
    form = doc.get("form")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FileFormatError("n must be a positive integer")
    if form == "kernel":
        A = _matrix(doc, "A", n)
        B = _matrix(doc, "B", n)
        if A.shape != B.shape:
            raise FileFormatError(f"A is {A.shape} but B is {B.shape}")
        if reduce:
            A, B = reduce_rows(A, B, tol)
        return from_kernel(A, B, tol)
    if form == "range":
        C = _matrix(doc, "C")
        D = _matrix(doc, "D")
        if C.shape != D.shape or C.shape[0] != n:
            raise FileFormatError(f"C and D must both be {n} x d; got {C.shape}, {D.shape}")
        return from_range(C, D, tol)
    raise FileFormatError(f"form must be 'kernel' or 'range', got {form!r}")


def _rows(m: np.ndarray) -> list:
    return [[float(v) + 0.0 for v in row] for row in np.asarray(m)]


def canonical_kernel(G: LinearRelation, tol: Tolerance = DEFAULT_TOL):
    """``(A, B)`` with ``(A B)`` in reduced row echelon form."""
    rows = echelon_basis(orth_complement(G.graph, tol), tol)
    return rows[:, :G.n], rows[:, G.n:]


def canonical_range(G: LinearRelation, tol: Tolerance = DEFAULT_TOL):
    """``(C, D)`` whose stacked columns are the echelon basis of the graph."""
    cols = echelon_basis(G.graph, tol).T
    return cols[:G.n], cols[G.n:]


def dump_relation(G: LinearRelation, form: str = "kernel", tol: Tolerance = DEFAULT_TOL) -> dict:
    if form == "kernel":
        A, B = canonical_kernel(G, tol)
        return {"form": "kernel", "n": G.n, "A": _rows(A), "B": _rows(B)}
    if form == "range":
        C, D = canonical_range(G, tol)
        return {"form": "range", "n": G.n, "C": _rows(C), "D": _rows(D)}
    raise ValueError(f"unknown form {form!r}")


def parse_witness(doc: dict):
    """Return ``(kind, matrix, basis)`` with kind ``'N'`` or ``'M'``."""
    if not isinstance(doc, dict):
        raise FileFormatError("witness file must be a JSON object")
    basis = None
    if "basis" in doc:
        b = doc["basis"]
        if not isinstance(b, dict) or "eigenvalues" not in b:
            raise FileFormatError("basis needs 'eigenvalues' and 'vectors'")
        lam = _matrix({"e": [b["eigenvalues"]]}, "e")[0]
        basis = (lam, _matrix(b, "vectors"))
    if "N" in doc:
        return "N", _matrix(doc, "N"), basis
    if "M" in doc:
        return "M", _matrix(doc, "M"), basis
    raise FileFormatError("witness file needs an 'N' or 'M' matrix")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("monoext") / "fixtures" / f"{name}.json"))


def load_json(path) -> dict:
    """Read a JSON file; bare fixture names such as ``e62`` or ``e62.json``
    resolve to the bundled fixtures when no such file exists."""
    p = Path(path)
    if not p.exists():
        stem = p.name[:-5] if p.name.endswith(".json") else p.name
        if p.parent == Path(".") and stem in FIXTURES:
            p = fixture_path(stem)
    with open(p, encoding="utf-8") as fh:
        return json.load(fh)


def load_fixture(name: str, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    return parse_relation(load_json(fixture_path(name)), tol)


def load_witness_fixture(name: str):
    return parse_witness(load_json(fixture_path(name)))


def fmt(v: float) -> str:
    """10 significant digits, with negative zero folded to zero."""
    v = float(v) + 0.0
    return f"{v:.10g}"


def _clean(a: np.ndarray) -> np.ndarray:
    # roundoff-level entries print as 0 so displays are stable across BLAS builds
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    return np.where(np.abs(a) <= 1e-12 * scale, 0.0, a)


def matrix_entry(m) -> dict:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        m = np.atleast_2d(m)
    return {"display": [[fmt(v) for v in row] for row in _clean(m)], "values": _rows(m)}


def vector_entry(v) -> dict:
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    return {"display": [fmt(x) for x in _clean(v)], "values": [float(x) + 0.0 for x in v]}
