"""Eigen-splits and monotonicity / maximality tests for linear relations.

For ``gra G = {A x + B x* = 0}`` with ``(A B)`` of full row rank ``p``:

* ``G`` is monotone iff ``A B^T + B A^T`` has exactly ``p - n`` positive
  eigenvalues (counted with multiplicity);
* ``G`` is maximally monotone iff moreover ``p = n``, i.e. the matrix is
  negative semidefinite;
* ``G*`` is monotone iff ``A B^T + B A^T`` is negative semidefinite.

The last statement is often written with the ``n x n`` matrix
``A^T B + B^T A``, but the quantifier runs over ``u`` in R^p, so the
``p x p`` form is the one that is actually tested here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, InternalInconsistency, NotMonotone, NotSquare
from .linrel import LinearRelation, adjoint
from .numerics import DEFAULT_TOL, Subspace, Tolerance, _frozen, sym_eig

MARGIN_FACTOR = 10.0


@dataclass(frozen=True, eq=False)
class EigenSplit:
    """Sign split of the eigenvectors of ``M + M^T``.

    Attributes
    ----------
    source : ndarray
        The analysed ``p x p`` matrix ``M``.
    lambdas : ndarray
        Eigenvalues of ``M + M^T``, descending.
    V : ndarray
        Orthonormal eigenvectors, columns aligned with ``lambdas``.
    k, z : int
        Number of positive / zero eigenvalues under the cutoff ``tau``.
    """

    source: np.ndarray
    lambdas: np.ndarray
    V: np.ndarray
    k: int
    z: int
    tau: float

    def __post_init__(self):
        for name in ("source", "lambdas", "V"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def p(self) -> int:
        return self.lambdas.shape[0]

    @property
    def Vplus(self) -> Subspace:
        return Subspace(self.V[:, :self.k])

    @property
    def Vzero(self) -> Subspace:
        return Subspace(self.V[:, self.k:self.k + self.z])

    @property
    def Vminus(self) -> Subspace:
        return Subspace(self.V[:, self.k + self.z:])

    @property
    def Vnonpos(self) -> Subspace:
        """``V0 + V-``: eigenvectors of the nonpositive eigenvalues."""
        return Subspace(self.V[:, self.k:])

    @property
    def marginal(self) -> bool:
        """Some eigenvalue lies within ``10 tau`` of zero, so the sign
        counts depend on the tolerance."""
        return bool(np.any(np.abs(self.lambdas) <= MARGIN_FACTOR * self.tau))


@dataclass(frozen=True, eq=False)
class MonotonicityReport:
    monotone: bool
    maximal: bool
    k: int
    p: int
    n: int
    split: EigenSplit
    marginal: bool
    criterion_detail: str

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.split.lambdas


def eigen_split(M, tol: Tolerance = DEFAULT_TOL) -> EigenSplit:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {M.shape}")
    lambdas, V = sym_eig(M + M.T, tol)
    scale = np.max(np.abs(lambdas)) if lambdas.size else 0.0
    tau = tol.cutoff(scale)
    k = int(np.sum(lambdas > tau))
    z = int(np.sum(np.abs(lambdas) <= tau))
    return EigenSplit(M, lambdas, V, k, z, tau)


def _min_eig(H: np.ndarray) -> tuple[float, float]:
    """Smallest eigenvalue and spectral scale of a symmetric matrix."""
    if H.size == 0:
        return 0.0, 0.0
    w = np.linalg.eigvalsh((H + H.T) / 2.0)
    return float(w[0]), float(np.max(np.abs(w)))


def monotone_on_subspace(M, S: Subspace, strict: bool = False,
                         tol: Tolerance = DEFAULT_TOL) -> bool:
    """Is ``<x, M x> >= 0`` (``> 0`` if strict) for all nonzero ``x`` in S?"""
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {M.shape}")
    if S.ambient_dim != M.shape[0]:
        raise AmbientMismatch(f"subspace in R^{S.ambient_dim}, matrix is {M.shape}")
    if S.dim == 0:
        return True
    H = S.basis.T @ (M + M.T) @ S.basis
    lo, _ = _min_eig(H)
    tau = tol.cutoff(np.max(np.abs(np.linalg.eigvalsh(M + M.T))))
    return lo > tau if strict else lo >= -tau


def graph_form(G: LinearRelation) -> np.ndarray:
    """``C^T D + D^T C`` for the orthonormal graph basis ``(C; D)``.

    ``<x, x*>`` on the graph is half the quadratic form of this matrix.
    """
    n = G.n
    C, D = G.graph.basis[:n], G.graph.basis[n:]
    return C.T @ D + D.T @ C


def graph_form_psd(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    lo, scale = _min_eig(graph_form(G))
    return lo >= -tol.cutoff(scale)


def is_monotone(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> MonotonicityReport:
    """Eigenvalue-count test, certified against the graph quadratic form.

    Raises
    ------
    InternalInconsistency
        The two criteria disagree (tolerance conflict).
    """
    A, B = G.A, G.B
    p, n = G.p, G.n
    split = eigen_split(A @ B.T, tol)
    monotone = split.k == p - n
    certificate = graph_form_psd(G, tol)
    if certificate != monotone:
        raise InternalInconsistency(
            f"eigenvalue count (k={split.k}, p-n={p - n}) says monotone={monotone} "
            f"but graph form PSD={certificate}")
    maximal = monotone and p == n
    detail = (f"A B^T + B A^T has k={split.k} positive eigenvalue(s); "
              f"p - n = {p - n}; dim gra G = {G.dim}")
    return MonotonicityReport(monotone, maximal, split.k, p, n, split,
                              split.marginal, detail)


def is_maximal(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    rep = is_monotone(G, tol)
    by_count = rep.p == rep.n and rep.k == 0
    by_dim = rep.monotone and G.dim == G.n
    if by_count != by_dim:
        raise InternalInconsistency("maximality: eigenvalue and dimension criteria disagree")
    return by_count


def adjoint_monotone(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``G*`` is monotone iff the ``p x p`` matrix ``A B^T + B A^T`` is
    negative semidefinite.

    The ``n x n`` matrix ``A^T B + B^T A`` does not decide this: for
    ``A = (-1 0; 0 0; 0 -1)``, ``B = (1 0; 0 1; 0 1)`` it equals ``-2 Id`` while
    ``gra G*`` has dimension 3 and so cannot be monotone.
    """
    split = eigen_split(G.A @ G.B.T, tol)
    verdict = split.k == 0
    if verdict != is_monotone(adjoint(G, tol), tol).monotone:
        raise InternalInconsistency("adjoint monotonicity: direct test disagrees")
    return verdict


def brezis_browder_check(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """For monotone ``G``: do ``G`` maximal, ``G*`` maximal and ``G*``
    monotone all agree?"""
    if not is_monotone(G, tol).monotone:
        raise NotMonotone("Brezis-Browder check needs a monotone relation")
    a = is_maximal(G, tol)
    b = is_maximal(adjoint(G, tol), tol)
    c = adjoint_monotone(G, tol)
    return a == b == c
