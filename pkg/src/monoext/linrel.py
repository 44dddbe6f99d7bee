"""Linear relations on R^n.

A relation is stored canonically by an orthonormal basis of its graph in
R^n x R^n (first ``n`` coordinates are ``x``, last ``n`` are ``x*``).
Kernel form ``A x + B x* = 0`` and range form ``(C y, D y)`` are kept as
caches, computed eagerly. When the caller supplies a representation it is
kept verbatim, because some extension constructions depend on the chosen
``(A, B)`` and not only on the graph.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    AmbientMismatch,
    DependentGeneratorsWarning,
    InternalInconsistency,
    RankDeficient,
    ShapeMismatch,
)
from .numerics import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    _frozen,
    as_mat,
    as_vec,
    nullspace,
    orth_complement,
    span,
    subspace_contains,
    subspace_equal,
    subspace_includes,
    svd_rank,
)


@dataclass(frozen=True, eq=False)
class KernelForm:
    """``gra G = {(x, x*) | A x + B x* = 0}`` with ``(A B)`` of full row rank."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", _frozen(self.A))
        object.__setattr__(self, "B", _frozen(self.B))

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def p(self) -> int:
        return self.A.shape[0]

    @property
    def block(self) -> np.ndarray:
        return np.hstack([self.A, self.B])


@dataclass(frozen=True, eq=False)
class RangeForm:
    """``gra G = {(C y, D y)}`` with the columns of ``(C; D)`` independent.

    ``reduced`` is set when dependent generators were dropped on input.
    """

    C: np.ndarray
    D: np.ndarray
    reduced: bool = False

    def __post_init__(self):
        object.__setattr__(self, "C", _frozen(self.C))
        object.__setattr__(self, "D", _frozen(self.D))

    @property
    def n(self) -> int:
        return self.C.shape[0]

    @property
    def d(self) -> int:
        return self.C.shape[1]

    @property
    def stacked(self) -> np.ndarray:
        return np.vstack([self.C, self.D])


@dataclass(frozen=True, eq=False)
class LinearRelation:
    n: int
    graph: Subspace
    kernel_form: KernelForm
    range_form: RangeForm

    @property
    def dim(self) -> int:
        return self.graph.dim

    @property
    def A(self) -> np.ndarray:
        return self.kernel_form.A

    @property
    def B(self) -> np.ndarray:
        return self.kernel_form.B

    @property
    def p(self) -> int:
        return self.kernel_form.p

    def __repr__(self):
        return f"LinearRelation(n={self.n}, dim={self.dim}, p={self.p})"


def _orthonormal_kernel(n: int, graph: Subspace, tol: Tolerance) -> KernelForm:
    rows = orth_complement(graph, tol).basis.T
    return KernelForm(rows[:, :n], rows[:, n:])


def _graph_range(n: int, graph: Subspace) -> RangeForm:
    return RangeForm(graph.basis[:n], graph.basis[n:])


def from_graph(n: int, graph: Subspace, tol: Tolerance = DEFAULT_TOL,
               kernel_form: KernelForm | None = None,
               range_form: RangeForm | None = None) -> LinearRelation:
    """Wrap a graph subspace of R^{2n}, filling in whichever forms are missing."""
    if graph.ambient_dim != 2 * n:
        raise AmbientMismatch(f"graph lives in R^{graph.ambient_dim}, expected R^{2 * n}")
    if kernel_form is None:
        kernel_form = _orthonormal_kernel(n, graph, tol)
    if range_form is None:
        range_form = _graph_range(n, graph)
    return LinearRelation(n, graph, kernel_form, range_form)


def from_kernel(A, B, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Relation ``{(x, x*) | A x + B x* = 0}``.

    Raises
    ------
    ShapeMismatch
        ``A`` and ``B`` differ in shape.
    RankDeficient
        ``rank(A B) < p``; call :func:`reduce_rows` first.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim == 1 or B.ndim == 1:
        raise ShapeMismatch("A and B must be 2-dimensional")
    if A.shape != B.shape:
        raise ShapeMismatch(f"A is {A.shape} but B is {B.shape}")
    n = A.shape[1]
    A = as_mat(A, "A", cols=n)
    B = as_mat(B, "B", cols=n)
    block = np.hstack([A, B])
    p = A.shape[0]
    r = svd_rank(block, tol)
    if r < p:
        raise RankDeficient(
            f"rank(A B) = {r} < p = {p}; use reduce_rows to drop redundant rows")
    graph = nullspace(block, tol) if p else Subspace.full(2 * n)
    return from_graph(n, graph, tol, kernel_form=KernelForm(A, B))


def reduce_rows(A, B, tol: Tolerance = DEFAULT_TOL):
    """Drop rows of ``(A B)`` until it has full row rank.

    A maximal independent subset of the original rows is kept (chosen by
    pivoted QR), so the representation stays as close to the input as
    possible. Full-rank input is returned unchanged.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape:
        raise ShapeMismatch(f"A is {A.shape} but B is {B.shape}")
    block = np.hstack([A, B])
    r = svd_rank(block, tol)
    if r == A.shape[0]:
        return A.copy(), B.copy()
    if r == 0:
        n = A.shape[1]
        return np.zeros((0, n)), np.zeros((0, n))
    _, _, piv = scipy.linalg.qr(block.T, pivoting=True, mode="economic")
    keep = np.sort(piv[:r])
    return A[keep].copy(), B[keep].copy()


def from_range(C, D, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Relation with graph equal to the column span of ``(C; D)``.

    Dependent generators are reduced (with a :class:`DependentGeneratorsWarning`)
    rather than rejected.
    """
    C = np.asarray(C, dtype=np.float64)
    D = np.asarray(D, dtype=np.float64)
    if C.ndim == 1:
        C = C.reshape(-1, 1)
    if D.ndim == 1:
        D = D.reshape(-1, 1)
    if C.shape != D.shape:
        raise ShapeMismatch(f"C is {C.shape} but D is {D.shape}")
    n = C.shape[0]
    C = as_mat(C, "C")
    D = as_mat(D, "D")
    stacked = np.vstack([C, D])
    r = svd_rank(stacked, tol)
    reduced = False
    if r < stacked.shape[1]:
        warnings.warn(
            f"range-form generators are dependent (rank {r} < {stacked.shape[1]}); reducing",
            DependentGeneratorsWarning, stacklevel=2)
        if r == 0:
            keep = np.zeros(0, dtype=int)
        else:
            _, _, piv = scipy.linalg.qr(stacked, pivoting=True, mode="economic")
            keep = np.sort(piv[:r])
        C, D = C[:, keep], D[:, keep]
        reduced = True
    graph = span(stacked, tol)
    return from_graph(n, graph, tol, range_form=RangeForm(C, D, reduced))


def to_kernel(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> KernelForm:
    """Kernel form whose rows are an orthonormal basis of ``(gra G)^perp``."""
    return _orthonormal_kernel(G.n, G.graph, tol)


def to_range(G: LinearRelation) -> RangeForm:
    """Range form read off the orthonormal graph basis."""
    return _graph_range(G.n, G.graph)


def identity_relation(n: int) -> LinearRelation:
    return from_kernel(np.eye(n), -np.eye(n))


def zero_relation(n: int) -> LinearRelation:
    """The relation with graph ``{(0, 0)}``."""
    return from_graph(n, Subspace.zero(2 * n))


def adjoint(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Adjoint ``G*``.

    Built as ``{(B^T u, -A^T u)}`` from the kernel form and checked against
    the definition ``{(x, x*) | (x*, -x) in (gra G)^perp}``.
    """
    A, B = G.A, G.B
    via_kernel = span(np.vstack([B.T, -A.T]), tol)
    perp = orth_complement(G.graph, tol).basis
    n = G.n
    via_definition = span(np.vstack([-perp[n:], perp[:n]]), tol)
    if not subspace_equal(via_kernel, via_definition, tol):
        raise InternalInconsistency("adjoint: kernel-form and definition routes disagree")
    # (B^T u, -A^T u) is orthogonal to (a, b) iff B a - A b = 0
    return from_graph(n, via_kernel, tol)


def inverse(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Inverse relation: swap the two blocks of every graph vector."""
    n = G.n
    basis = G.graph.basis
    swapped = Subspace(np.vstack([basis[n:], basis[:n]]))
    kf = KernelForm(G.B, G.A)
    rf = RangeForm(G.range_form.D, G.range_form.C, G.range_form.reduced)
    return LinearRelation(n, swapped, kf, rf)


def domain(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    return span(G.graph.basis[:G.n], tol)


def range_of(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    return span(G.graph.basis[G.n:], tol)


def _fiber(first: np.ndarray, second: np.ndarray, tol: Tolerance) -> Subspace:
    # {second c | first c = 0}
    coeff = nullspace(first, tol) if first.shape[1] else Subspace.zero(0)
    return span(second @ coeff.basis, tol) if coeff.dim else Subspace.zero(second.shape[0])


def image_at_zero(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """``G 0 = {x* | (0, x*) in gra G}``; cross-checked against ``ker B``."""
    n = G.n
    out = _fiber(G.graph.basis[:n], G.graph.basis[n:], tol)
    if G.p and not subspace_equal(out, nullspace(G.B, tol), tol):
        raise InternalInconsistency("image_at_zero disagrees with ker B")
    return out


def kernel_of(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """``G^{-1} 0 = {x | (x, 0) in gra G}``; cross-checked against ``ker A``."""
    n = G.n
    out = _fiber(G.graph.basis[n:], G.graph.basis[:n], tol)
    if G.p and not subspace_equal(out, nullspace(G.A, tol), tol):
        raise InternalInconsistency("kernel_of disagrees with ker A")
    return out


def range_of_id_plus(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """``ran(G + Id)``, via ``P_{X*} ker(A-B  B)`` and checked against
    ``{x + x*}`` over the graph."""
    n = G.n
    direct = span(G.graph.basis[:n] + G.graph.basis[n:], tol)
    if G.p:
        ker = nullspace(np.hstack([G.A - G.B, G.B]), tol)
        via_kernel = span(ker.basis[n:], tol)
    else:
        via_kernel = Subspace.full(n)
    if not subspace_equal(direct, via_kernel, tol):
        raise InternalInconsistency("ran(G+Id): graph and kernel-form routes disagree")
    return via_kernel


def graph_contains(G: LinearRelation, x, xs, tol: Tolerance = DEFAULT_TOL) -> bool:
    x, xs = as_vec(x), as_vec(xs)
    if x.shape[0] != G.n or xs.shape[0] != G.n:
        raise AmbientMismatch(f"expected vectors of length {G.n}")
    return subspace_contains(G.graph, np.concatenate([x, xs]), tol)


def extension_of(G: LinearRelation, H: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff ``gra G`` is contained in ``gra H``."""
    if G.n != H.n:
        raise AmbientMismatch(f"relations on R^{G.n} and R^{H.n}")
    return subspace_includes(G.graph, H.graph, tol)


def is_single_valued(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Full domain and ``G 0 = {0}``, i.e. ``G`` is an ``n x n`` matrix."""
    return domain(G, tol).dim == G.n and image_at_zero(G, tol).dim == 0


def single_valued_matrix(G: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> np.ndarray | None:
    """The matrix ``T`` with ``gra G = {(x, T x)}``, or None if G is not a
    single-valued map on all of R^n."""
    if not is_single_valued(G, tol):
        return None
    n = G.n
    X, Xs = G.graph.basis[:n], G.graph.basis[n:]
    return np.linalg.solve(X.T, Xs.T).T
