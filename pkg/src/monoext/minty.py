"""Minty parametrization and resolvents of monotone linear relations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalInconsistency, NotMaximal, NotMonotone, NotSquare
from .linrel import LinearRelation, domain, graph_contains, range_of, range_of_id_plus
from .monotone import is_maximal, is_monotone
from .numerics import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    _frozen,
    as_vec,
    nullspace,
    pinv,
    span,
    subspace_contains,
    subspace_equal,
    svd_rank,
)


@dataclass(frozen=True, eq=False)
class MintyMap:
    """``y -> (P_x y, P_xs y)`` from ``ran(Id + G)`` onto ``gra G``.

    Only meaningful for ``y`` in ``param_domain``; no claim is made outside it.
    """

    n: int
    P_x: np.ndarray
    P_xs: np.ndarray
    param_domain: Subspace

    def __post_init__(self):
        object.__setattr__(self, "P_x", _frozen(self.P_x))
        object.__setattr__(self, "P_xs", _frozen(self.P_xs))

    def __call__(self, y):
        y = as_vec(y)
        return self.P_x @ y, self.P_xs @ y

    def accepts(self, y, tol: Tolerance = DEFAULT_TOL) -> bool:
        return subspace_contains(self.param_domain, y, tol)


def minty_criterion(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``||y||^2 - ||y*||^2 >= 0`` on ``{(A+B) y + (B-A) y* = 0}``.

    Rotating ``(x, x*)`` by 45 degrees turns ``<x, x*>`` into
    ``(||y||^2 - ||y*||^2) / 2``, so this is an independent monotonicity test.
    """
    A, B = G.A, G.B
    n = G.n
    if G.p:
        K = nullspace(np.hstack([A + B, B - A]), tol).basis
    else:
        K = np.eye(2 * n)
    if K.shape[1] == 0:
        return True
    Q = K[:n].T @ K[:n] - K[n:].T @ K[n:]
    w = np.linalg.eigvalsh((Q + Q.T) / 2.0)
    return bool(w[0] >= -tol.cutoff(np.max(np.abs(w))))


def column_rank_check(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Does ``B - A`` have full column rank ``n``? Necessary for monotonicity."""
    return svd_rank(G.B - G.A, tol) == G.n


def minty_map(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> MintyMap:
    """Build ``P_x = (Id + (B-A)^+ (B+A)) / 2`` and ``P_xs = (Id - (B-A)^+ (B+A)) / 2``.

    Raises
    ------
    NotMonotone
    """
    if not is_monotone(G, tol).monotone:
        raise NotMonotone("Minty parametrization needs a monotone relation")
    if not column_rank_check(G, tol):
        raise InternalInconsistency("monotone relation with rank-deficient B - A")
    n = G.n
    P = pinv(G.B - G.A, tol) @ (G.B + G.A)
    eye = np.eye(n)
    P_x = 0.5 * (eye + P)
    P_xs = 0.5 * (eye - P)
    dom = range_of_id_plus(G, tol)
    for j in range(dom.dim):
        y = dom.basis[:, j]
        if not graph_contains(G, P_x @ y, P_xs @ y, tol):
            raise InternalInconsistency("Minty image left the graph")
    return MintyMap(n, P_x, P_xs, dom)


def _require_maximal(G: LinearRelation, tol: Tolerance):
    if not is_maximal(G, tol):
        raise NotMaximal("resolvent needs a maximally monotone relation (p = n, "
                         "A B^T + B A^T negative semidefinite)")


def resolvent(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``(Id + G)^{-1} = (B - A)^{-1} B``."""
    _require_maximal(G, tol)
    return np.linalg.solve(G.B - G.A, G.B)


def co_resolvent(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """``(Id + G^{-1})^{-1} = -(B - A)^{-1} A``."""
    _require_maximal(G, tol)
    return -np.linalg.solve(G.B - G.A, G.A)


def firmly_nonexpansive_check(T, sample_count: int = 200, seed: int = 0,
                              tol: Tolerance = DEFAULT_TOL) -> bool:
    """Linear ``T`` is firmly nonexpansive iff ``T^T T <= (T + T^T) / 2``.

    The spectral test decides; ``sample_count`` random pairs then check
    ``||T x - T y||^2 <= <T x - T y, x - y>`` as a secondary guard.
    """
    T = np.asarray(T, dtype=np.float64)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {T.shape}")
    sym = 0.5 * (T + T.T)
    gram = T.T @ T
    gap = sym - gram
    w = np.linalg.eigvalsh(0.5 * (gap + gap.T))
    scale = max(np.linalg.norm(sym, 2), np.linalg.norm(gram, 2), 1.0)
    tau = tol.cutoff(scale)
    if w[0] < -tau:
        return False
    rng = np.random.default_rng(seed)
    n = T.shape[0]
    d = rng.standard_normal((sample_count, n)) - rng.standard_normal((sample_count, n))
    Td = d @ T.T
    lhs = np.einsum("ij,ij->i", Td, Td)
    rhs = np.einsum("ij,ij->i", Td, d)
    return bool(np.all(lhs <= rhs + tau * np.einsum("ij,ij->i", d, d)))


def domain_range_via_resolvent(G: LinearRelation, tol: Tolerance = DEFAULT_TOL):
    """``dom G = (B-A)^{-1} ran B`` and ``ran G = (B-A)^{-1} ran A``."""
    J = resolvent(G, tol)
    dom = span(J, tol)
    ran = span(-np.linalg.solve(G.B - G.A, G.A), tol)
    if not subspace_equal(dom, domain(G, tol), tol):
        raise InternalInconsistency("resolvent domain disagrees with dom G")
    if not subspace_equal(ran, range_of(G, tol), tol):
        raise InternalInconsistency("resolvent range disagrees with ran G")
    return dom, ran


def minty_graph(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Graph rebuilt as ``{(J y, (Id - J) y) | y in R^n}`` for maximal ``G``."""
    J = resolvent(G, tol)
    return span(np.vstack([J, np.eye(G.n) - J]), tol)
