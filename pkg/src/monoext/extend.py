"""Maximally monotone linear extensions of a monotone linear relation.

Notation: ``S = A B^T + B A^T`` (``p x p``), with eigenvalues ``lambdas`` and
eigenvector matrix ``V``. The constructions are

``extend_vg``
    kernel rows ``V_g (A B)`` where the rows of ``V_g`` span the nonpositive
    eigenspace of ``S``; equivalently ``gra G + {(B^T u, A^T u) | u in V+}``.
``extend_hat``
    ``{(B^T u, -A^T u) | u in V0 + V-}``, whose adjoint is ``extend_vg``.
``extend_with_N`` / ``extend_with_M``
    kernel rows ``N^T V^T (A B)`` resp. ``M^T (A B)``, which parametrize
    every maximal monotone extension.
``extend_domain_preserving`` / ``extend_range_preserving``
    ``gra G + {0} x (dom G)^perp`` and ``gra G + (ran G)^perp x {0}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadWitness,
    InternalInconsistency,
    NotAnExtension,
    NotApplicable,
    NotMonotone,
    ShapeMismatch,
)
from .linrel import (
    KernelForm,
    LinearRelation,
    adjoint,
    domain,
    extension_of,
    from_graph,
    from_kernel,
    inverse,
    range_of,
    reduce_rows,
    single_valued_matrix,
)
from .monotone import MonotonicityReport, eigen_split, is_monotone
from .numerics import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    _frozen,
    nullspace,
    orth_complement,
    span,
    subspace_equal,
    svd_rank,
)

METHODS = ("vg", "hat", "n_matrix", "m_matrix", "e1", "e2")


@dataclass(frozen=True, eq=False)
class ExtensionResult:
    """A certified maximal monotone extension.

    ``witness`` is the ``V_g``, ``N`` or ``M`` matrix used, when there is one.
    """

    relation: LinearRelation
    method: str
    certificate: MonotonicityReport
    witness: np.ndarray | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.witness is not None:
            object.__setattr__(self, "witness", _frozen(self.witness))
        if self.matrix is not None:
            object.__setattr__(self, "matrix", _frozen(self.matrix))


def _require_monotone(G: LinearRelation, tol: Tolerance) -> MonotonicityReport:
    rep = is_monotone(G, tol)
    if not rep.monotone:
        raise NotMonotone(
            f"relation is not monotone: {rep.k} positive eigenvalue(s), "
            f"need p - n = {rep.p - rep.n}")
    return rep


def _certify(G: LinearRelation, H: LinearRelation, method: str, tol: Tolerance,
             witness=None) -> ExtensionResult:
    cert = is_monotone(H, tol)
    if not cert.maximal:
        raise InternalInconsistency(f"{method}: result is not maximally monotone")
    if not extension_of(G, H, tol):
        raise InternalInconsistency(f"{method}: result does not contain gra G")
    return ExtensionResult(H, method, cert, witness, single_valued_matrix(H, tol))


def _from_rows(rows: np.ndarray, G: LinearRelation, tol: Tolerance) -> LinearRelation:
    """Relation with kernel rows ``rows @ (A B)``, rank-reduced if needed."""
    A2, B2 = reduce_rows(rows @ G.A, rows @ G.B, tol)
    return from_kernel(A2, B2, tol)


def extend_vg(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> ExtensionResult:
    """Maximal monotone extension with kernel rows ``V_g A, V_g B``.

    Raises
    ------
    NotMonotone
    """
    rep = _require_monotone(G, tol)
    split = rep.split
    Vg = split.V[:, split.k:].T
    H = from_kernel(Vg @ G.A, Vg @ G.B, tol)
    plus = split.V[:, :split.k]
    other = span(np.hstack([G.graph.basis, np.vstack([G.B.T @ plus, G.A.T @ plus])]), tol)
    if not subspace_equal(H.graph, other, tol):
        raise InternalInconsistency("extend_vg: kernel and sum formulas disagree")
    return _certify(G, H, "vg", tol, witness=Vg)


def extend_hat(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """``{(B^T u, -A^T u) | u in V0 + V-}``; always monotone.

    For monotone ``G`` its adjoint is :func:`extend_vg`'s relation.
    """
    split = eigen_split(G.A @ G.B.T, tol)
    U = split.V[:, split.k:]
    graph = span(np.vstack([G.B.T @ U, -G.A.T @ U]), tol)
    if graph.dim != U.shape[1]:
        raise InternalInconsistency("extend_hat: dimension not preserved")
    return from_graph(G.n, graph, tol)


def _basis_for(G: LinearRelation, basis, tol: Tolerance):
    """Eigen-data ``(lambdas, V)`` of ``A B^T + B A^T``.

    Defaults to the orthonormal, descending basis. An explicit basis may use
    any order and any nonzero column scaling; it is validated against
    ``S V = V diag(lambdas)``.
    """
    S = G.A @ G.B.T + G.B @ G.A.T
    if basis is None:
        split = eigen_split(G.A @ G.B.T, tol)
        return S, split.lambdas, split.V
    lambdas, V = basis
    lambdas = np.asarray(lambdas, dtype=np.float64).reshape(-1)
    V = np.asarray(V, dtype=np.float64)
    p = G.p
    if V.shape != (p, p) or lambdas.shape != (p,):
        raise BadWitness("basis", f"eigenbasis must be {p}x{p} with {p} eigenvalues")
    scale = max(np.max(np.abs(S)), 1.0) * max(np.max(np.abs(V)), 1.0)
    if np.max(np.abs(S @ V - V * lambdas)) > 1e3 * tol.cutoff(scale):
        raise BadWitness("basis", "columns are not eigenvectors for the given eigenvalues")
    if svd_rank(V, tol) != p:
        raise BadWitness("basis", "eigenvector matrix is singular")
    return S, lambdas, V


def _check_psd_witness(F: np.ndarray, S: np.ndarray, n: int, tol: Tolerance, what: str):
    if svd_rank(F, tol) != n:
        raise BadWitness("rank", f"{what} has rank {svd_rank(F, tol)}, need n = {n}")
    Q = F.T @ S @ F
    w = np.linalg.eigvalsh((Q + Q.T) / 2.0)
    tau = tol.cutoff(np.max(np.abs(w)) if w.size else 0.0)
    if w.size and w[-1] > tau:
        raise BadWitness("psd", f"{what}^T S {what} has positive eigenvalue {w[-1]:.3g}")


def extend_with_N(G: LinearRelation, N, tol: Tolerance = DEFAULT_TOL,
                  basis=None) -> ExtensionResult:
    """Extension with kernel rows ``N^T V^T A, N^T V^T B``.

    Parameters
    ----------
    N : (p, p) array_like
        Must have rank ``n`` with ``N^T diag(lambdas) N`` negative semidefinite.
    basis : (lambdas, V), optional
        Eigen-data of ``A B^T + B A^T`` to use instead of the orthonormal
        descending default. The result depends on ``V``'s order and scaling.

    Raises
    ------
    NotMonotone, BadWitness
    """
    _require_monotone(G, tol)
    N = np.asarray(N, dtype=np.float64)
    p, n = G.p, G.n
    if N.shape != (p, p):
        raise BadWitness("shape", f"N must be {p}x{p}, got {N.shape}")
    if svd_rank(N, tol) != n:
        raise BadWitness("rank", f"rank N = {svd_rank(N, tol)}, need n = {n}")
    S, _, V = _basis_for(G, basis, tol)
    # equals N^T Id_lambda N when V is orthonormal
    _check_psd_witness(V @ N, S, n, tol, "VN")
    H = _from_rows((V @ N).T, G, tol)
    return _certify(G, H, "n_matrix", tol, witness=N)


def extend_with_M(G: LinearRelation, M, tol: Tolerance = DEFAULT_TOL) -> ExtensionResult:
    """Extension with kernel rows ``M^T A, M^T B``.

    Cross-checked against :func:`extend_with_N` with ``N = V^T M``.
    """
    _require_monotone(G, tol)
    M = np.asarray(M, dtype=np.float64)
    p, n = G.p, G.n
    if M.shape != (p, p):
        raise BadWitness("shape", f"M must be {p}x{p}, got {M.shape}")
    S = G.A @ G.B.T + G.B @ G.A.T
    _check_psd_witness(M, S, n, tol, "M")
    H = _from_rows(M.T, G, tol)
    split = eigen_split(G.A @ G.B.T, tol)
    via_N = extend_with_N(G, split.V.T @ M, tol)
    if not subspace_equal(H.graph, via_N.relation.graph, tol):
        raise InternalInconsistency("extend_with_M disagrees with extend_with_N(V^T M)")
    return _certify(G, H, "m_matrix", tol, witness=M)


def enumerate_extension_witness(G: LinearRelation, H: LinearRelation,
                                tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Recover ``N`` (rank ``n``) such that ``extend_with_N(G, N)`` is ``H``.

    ``F = {u | (B^T u, -A^T u) in gra H*}`` has dimension ``n``;
    ``N = V^T (0 ... 0 f_1 ... f_n)`` for an orthonormal basis ``f`` of F.

    Raises
    ------
    NotAnExtension
        ``gra G`` is not inside ``gra H`` or ``H`` is not maximally monotone.
    """
    _require_monotone(G, tol)
    if not extension_of(G, H, tol):
        raise NotAnExtension("gra G is not contained in gra H")
    if not is_monotone(H, tol).maximal:
        raise NotAnExtension("H is not maximally monotone")
    p, n = G.p, G.n
    Hstar = adjoint(H, tol).graph
    W = np.vstack([G.B.T, -G.A.T])
    F = nullspace(W - Hstar.basis @ (Hstar.basis.T @ W), tol)
    if F.dim != n:
        raise InternalInconsistency(f"witness subspace has dim {F.dim}, expected {n}")
    padded = np.hstack([np.zeros((p, p - n)), F.basis])
    V = eigen_split(G.A @ G.B.T, tol).V
    N = V.T @ padded
    rebuilt = extend_with_N(G, N, tol)
    if not subspace_equal(rebuilt.relation.graph, H.graph, tol):
        raise InternalInconsistency("recovered N does not rebuild H")
    return N


def normal_cone_relation(S: Subspace, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Normal cone of a subspace: ``gra N_S = S x S^perp``."""
    n = S.ambient_dim
    perp = orth_complement(S, tol)
    graph = np.zeros((2 * n, n))
    graph[:n, :S.dim] = S.basis
    graph[n:, S.dim:] = perp.basis
    A = np.vstack([perp.basis.T, np.zeros((S.dim, n))])
    B = np.vstack([np.zeros((perp.dim, n)), S.basis.T])
    return from_graph(n, Subspace(graph), tol, kernel_form=KernelForm(A, B))


def _add_block(G: LinearRelation, extra: Subspace, first: bool, tol: Tolerance) -> LinearRelation:
    n = G.n
    pad = np.zeros((n, extra.dim))
    block = np.vstack([extra.basis, pad]) if first else np.vstack([pad, extra.basis])
    return from_graph(n, span(np.hstack([G.graph.basis, block]), tol), tol)


def extend_domain_preserving(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> ExtensionResult:
    """``E1``: add ``{0} x (dom G)^perp``; keeps the domain."""
    _require_monotone(G, tol)
    dom = domain(G, tol)
    H = _add_block(G, orth_complement(dom, tol), first=False, tol=tol)
    if not subspace_equal(domain(H, tol), dom, tol):
        raise InternalInconsistency("E1 changed the domain")
    return _certify(G, H, "e1", tol)


def extend_range_preserving(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> ExtensionResult:
    """``E2``: add ``(ran G)^perp x {0}``; keeps the range.

    Cross-checked against ``inverse(E1(inverse(G)))``.
    """
    _require_monotone(G, tol)
    ran = range_of(G, tol)
    H = _add_block(G, orth_complement(ran, tol), first=True, tol=tol)
    if not subspace_equal(range_of(H, tol), ran, tol):
        raise InternalInconsistency("E2 changed the range")
    via_inverse = inverse(extend_domain_preserving(inverse(G, tol), tol).relation, tol)
    if not subspace_equal(H.graph, via_inverse.graph, tol):
        raise InternalInconsistency("E2 disagrees with inverse(E1(inverse(G)))")
    return _certify(G, H, "e2", tol)


def extend(G: LinearRelation, method: str, witness=None, tol: Tolerance = DEFAULT_TOL,
           basis=None) -> ExtensionResult:
    """Dispatch on ``method`` (one of :data:`METHODS`)."""
    if method == "vg":
        return extend_vg(G, tol)
    if method == "hat":
        _require_monotone(G, tol)
        return _certify(G, adjoint(extend_hat(G, tol), tol), "hat", tol)
    if method == "n_matrix":
        if witness is None:
            raise BadWitness("shape", "n_matrix needs a witness N")
        return extend_with_N(G, witness, tol, basis=basis)
    if method == "m_matrix":
        if witness is None:
            raise BadWitness("shape", "m_matrix needs a witness M")
        return extend_with_M(G, witness, tol)
    if method == "e1":
        return extend_domain_preserving(G, tol)
    if method == "e2":
        return extend_range_preserving(G, tol)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


@dataclass(frozen=True, eq=False)
class UnionCounterexample:
    """Two points of the unrestricted union set whose difference has
    negative pairing ``<eps B^T u2, eps A^T u2>``."""

    u1: np.ndarray
    u2: np.ndarray
    eps: float
    first: np.ndarray
    second: np.ndarray
    pairing: float


def union_counterexample(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> UnionCounterexample:
    """Show that ``gra G + {(B^T u, A^T u) | <u, S u> >= 0}`` is not monotone.

    Uses a positive eigenvector ``u1`` and a negative one ``u2`` of ``S`` and
    ``eps = sqrt(<u1, S u1> / |<u2, S u2>|) / 2``, so that ``u1 + eps u2`` stays
    in the cone ``<u, S u> >= 0``.

    Raises
    ------
    NotApplicable
        ``S`` lacks a positive or a negative eigenvalue.
    """
    split = eigen_split(G.A @ G.B.T, tol)
    neg = split.p - split.k - split.z
    if split.k == 0 or neg == 0:
        raise NotApplicable("A B^T + B A^T needs both positive and negative eigenvalues")
    S = G.A @ G.B.T + G.B @ G.A.T
    u1, u2 = split.V[:, 0], split.V[:, -1]
    eps = 0.5 * np.sqrt((u1 @ S @ u1) / abs(u2 @ S @ u2))
    w = u1 + eps * u2
    if not (w @ S @ w > 0):
        raise InternalInconsistency("u1 + eps u2 left the cone")
    lift = np.vstack([G.B.T, G.A.T])
    first, second = lift @ u1, lift @ w
    diff = second - first
    n = G.n
    pairing = float(diff[:n] @ diff[n:])
    return UnionCounterexample(u1, u2, float(eps), first, second, pairing)
