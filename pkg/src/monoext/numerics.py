"""Dense real-matrix primitives under a single tolerance policy.

Every rank, nullspace, eigenvalue-sign and pseudoinverse decision in the
package goes through this module. The cutoff is always

    max(tol.abs, tol.rel * scale)

where ``scale`` is the largest singular value (rank decisions) or the largest
eigenvalue magnitude (sign decisions).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, NotFinite, NotSquare, NotSymmetric, ShapeMismatch


@dataclass(frozen=True)
class Tolerance:
    """Relative threshold plus an absolute floor."""

    rel: float = 1e-10
    abs: float = 1e-12

    def __post_init__(self):
        if not (self.rel > 0 and self.abs > 0):
            raise ValueError("tolerances must be positive")

    def cutoff(self, scale: float) -> float:
        return max(self.abs, self.rel * float(scale))


DEFAULT_TOL = Tolerance()


def as_mat(m, name: str = "matrix", cols: int | None = None) -> np.ndarray:
    """Coerce ``m`` to a finite, read-only 2-D float64 array.

    Zero-row matrices are allowed when ``cols`` is given (an empty list is
    then read as a ``0 x cols`` matrix).
    """
    arr = np.array(m, dtype=np.float64)
    if arr.size == 0 and cols is not None:
        arr = arr.reshape(0, cols)
    if arr.ndim == 1 and arr.size:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ShapeMismatch(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if cols is not None and arr.shape[1] != cols:
        raise ShapeMismatch(f"{name} must have {cols} columns, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise NotFinite(f"{name} has non-finite entries")
    arr.flags.writeable = False
    return arr


def as_vec(v, name: str = "vector") -> np.ndarray:
    arr = np.array(v, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise NotFinite(f"{name} has non-finite entries")
    return arr


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of R^ambient_dim stored by an orthonormal basis.

    ``basis`` has shape ``(ambient_dim, d)``; ``d = 0`` is the zero space.
    Bases are only meaningful up to rotation, so compare with
    :func:`subspace_equal`, never entrywise.
    """

    basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", _frozen(self.basis))

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    d = dim

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def project(self, v) -> np.ndarray:
        v = as_vec(v)
        return self.basis @ (self.basis.T @ v)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(np.zeros((n, 0)))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(np.eye(n))

    @classmethod
    def span(cls, *vectors, tol: Tolerance = DEFAULT_TOL) -> "Subspace":
        """Span of the given vectors (dependent ones are dropped)."""
        return span(np.column_stack([as_vec(v) for v in vectors]), tol)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def svd_rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    m = np.asarray(m, dtype=np.float64)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol.cutoff(s[0])))


def nullspace(m, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of ``{v : m v = 0}``."""
    m = np.asarray(m, dtype=np.float64)
    cols = m.shape[1]
    if m.shape[0] == 0 or not np.any(m):
        return Subspace.full(cols)
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    r = int(np.sum(s > tol.cutoff(s[0])))
    return Subspace(vt[r:].T.copy())


def span(m, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of the column span of ``m``."""
    m = np.asarray(m, dtype=np.float64)
    rows = m.shape[0]
    if m.size == 0 or not np.any(m):
        return Subspace.zero(rows)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    r = int(np.sum(s > tol.cutoff(s[0])))
    return Subspace(u[:, :r].copy())


def sym_eig(s, tol: Tolerance = DEFAULT_TOL):
    """Eigen-decomposition of a symmetric matrix, eigenvalues descending.

    The input is symmetrized as ``(s + s.T) / 2`` first, so tiny asymmetries
    from floating-point construction are tolerated.

    Returns
    -------
    eigenvalues : ndarray, shape (p,)
    vectors : ndarray, shape (p, p)
        Orthonormal columns aligned with ``eigenvalues``.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {s.shape}")
    if s.size == 0:
        return np.zeros(0), np.zeros((0, 0))
    scale = np.max(np.abs(s))
    if np.max(np.abs(s - s.T)) > tol.abs * (1.0 + scale):
        raise NotSymmetric("matrix is not symmetric within tolerance")
    w, v = np.linalg.eigh((s + s.T) / 2.0)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def pinv(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse by truncated SVD."""
    m = np.asarray(m, dtype=np.float64)
    if m.size == 0 or not np.any(m):
        return np.zeros(m.shape[::-1])
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    keep = s > tol.cutoff(s[0])
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (vt.T * inv) @ u.T


def _check_ambient(a: int, b: int):
    if a != b:
        raise AmbientMismatch(f"ambient dimensions differ: {a} vs {b}")


def subspace_equal(s1: Subspace, s2: Subspace, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the dimensions agree and all principal-angle cosines are
    at least ``1 - tol.rel``."""
    _check_ambient(s1.ambient_dim, s2.ambient_dim)
    if s1.dim != s2.dim:
        return False
    if s1.dim == 0:
        return True
    cosines = np.linalg.svd(s1.basis.T @ s2.basis, compute_uv=False)
    return bool(np.all(cosines >= 1.0 - tol.rel))


def subspace_contains(s: Subspace, v, tol: Tolerance = DEFAULT_TOL) -> bool:
    v = as_vec(v)
    _check_ambient(s.ambient_dim, v.shape[0])
    resid = np.linalg.norm(v - s.project(v))
    return bool(resid <= tol.cutoff(np.linalg.norm(v)))


def subspace_includes(small: Subspace, big: Subspace, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff every basis vector of ``small`` lies in ``big``."""
    _check_ambient(small.ambient_dim, big.ambient_dim)
    return all(subspace_contains(big, small.basis[:, j], tol) for j in range(small.dim))


def orth_complement(s: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return nullspace(s.basis.T, tol)


def subspace_sum(*spaces: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    n = spaces[0].ambient_dim
    for s in spaces[1:]:
        _check_ambient(n, s.ambient_dim)
    return span(np.hstack([s.basis for s in spaces]), tol)


def echelon_basis(s: Subspace, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Reduced row echelon form of the row space spanned by ``s.basis.T``.

    Returns a ``(d, ambient_dim)`` array. The RREF of a subspace is unique,
    which gives a canonical, diff-able basis for serialization.
    """
    r = np.array(s.basis.T, dtype=np.float64)
    d, n = r.shape
    row = 0
    for col in range(n):
        if row == d:
            break
        piv = row + int(np.argmax(np.abs(r[row:, col])))
        if abs(r[piv, col]) <= tol.cutoff(1.0) * 10:
            continue
        r[[row, piv]] = r[[piv, row]]
        r[row] /= r[row, col]
        for i in range(d):
            if i != row:
                r[i] -= r[i, col] * r[row]
        row += 1
    r[np.abs(r) <= tol.abs] = 0.0
    return r + 0.0
