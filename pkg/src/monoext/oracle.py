"""Random instance generators and brute-force verifiers.

Nothing here calls into :mod:`monoext.monotone`; the checks use only graph
bases and sampling so they stay independent of the eigenvalue criteria
they are used to audit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParameters, GenerationFailed
from .linrel import (
    LinearRelation,
    domain,
    extension_of,
    from_kernel,
    from_range,
    image_at_zero,
    to_kernel,
)
from .numerics import DEFAULT_TOL, Tolerance, orth_complement, subspace_equal


@dataclass(frozen=True)
class Verdict:
    passed: bool
    samples: int
    worst_violation: float
    witness: tuple | None = None
    reason: str = ""


def sample_monotonicity(G: LinearRelation, samples: int = 1000, seed: int = 0,
                        tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """Check ``<x - y, x* - y*> >= -tau ||x - y|| ||x* - y*||`` on random pairs.

    Both the pairwise form and the single-point form ``<z, z*> >= 0`` are
    evaluated. The violation is measured relative to the norm product.
    """
    n, d = G.n, G.dim
    if d == 0:
        return Verdict(True, samples, 0.0)
    rng = np.random.default_rng(seed)
    basis = G.graph.basis
    first = rng.standard_normal((samples, d)) @ basis.T
    second = rng.standard_normal((samples, d)) @ basis.T
    worst, witness = 0.0, None
    for pts, pair in ((first - second, True), (first, False)):
        x, xs = pts[:, :n], pts[:, n:]
        inner = np.einsum("ij,ij->i", x, xs)
        norms = np.linalg.norm(x, axis=1) * np.linalg.norm(xs, axis=1)
        rel = np.where(norms > 0, -inner / np.where(norms > 0, norms, 1.0), 0.0)
        i = int(np.argmax(rel))
        if rel[i] > worst:
            worst = float(rel[i])
            witness = (first[i], second[i]) if pair else (first[i], np.zeros(2 * n))
    passed = worst <= tol.rel
    return Verdict(passed, samples, worst, None if passed else witness,
                   "" if passed else "negative pairing found")


def _mixing(rng, p: int) -> np.ndarray:
    q, _ = np.linalg.qr(rng.standard_normal((p, p)))
    return q * rng.uniform(0.5, 2.0, size=p)


def _restrict(rng, M: np.ndarray, p: int, tol: Tolerance) -> LinearRelation:
    # graph {(W c, M W c)} for a random (2n - p)-dim coefficient space W
    n = M.shape[0]
    W = rng.standard_normal((n, 2 * n - p))
    if 2 * n - p == n:
        G = from_range(np.eye(n), M, tol)
    else:
        G = from_range(W, M @ W, tol)
    kf = to_kernel(G, tol)
    Q = _mixing(rng, p)
    return from_kernel(Q @ kf.A, Q @ kf.B, tol)


def _check_shape(n: int, p: int):
    if n < 1 or not (n <= p <= 2 * n):
        raise BadParameters(f"need 1 <= n <= p <= 2n, got n={n}, p={p}")


def random_monotone_relation(n: int, p: int, seed: int,
                             tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Monotone relation with kernel form of size ``p x n``.

    Restricts ``x* = (R + K) x`` (``R`` positive semidefinite, ``K`` skew) to
    a random ``(2n - p)``-dimensional part of its graph, then mixes the
    kernel rows with a random invertible matrix.
    """
    _check_shape(n, p)
    rng = np.random.default_rng(seed)
    L = rng.standard_normal((n, n))
    K = rng.standard_normal((n, n))
    M = L @ L.T + (K - K.T) / 2.0
    return _restrict(rng, M, p, tol)


def random_nonmonotone_relation(n: int, p: int, seed: int,
                                tol: Tolerance = DEFAULT_TOL, M=None,
                                max_attempts: int = 100) -> LinearRelation:
    """Non-monotone relation with kernel form of size ``p x n``.

    ``M`` (default: random with an indefinite symmetric part) is restricted
    to a random subspace; draws are repeated until sampling finds a
    violation.

    Raises
    ------
    GenerationFailed
        No violating restriction found in ``max_attempts`` draws.
    """
    if not (1 <= n <= p < 2 * n):
        raise BadParameters(f"need 1 <= n <= p < 2n, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        if M is None:
            q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            eig = rng.uniform(-2.0, 2.0, size=n)
            eig[0] = -rng.uniform(0.5, 2.0)
            K = rng.standard_normal((n, n))
            cand = (q * eig) @ q.T + (K - K.T) / 2.0
        else:
            cand = np.asarray(M, dtype=np.float64)
        G = _restrict(rng, cand, p, tol)
        if not sample_monotonicity(G, 1000, int(rng.integers(2**31)), tol).passed:
            return G
    raise GenerationFailed(f"no non-monotone ({n}, {p}) instance in {max_attempts} attempts")


def exhaustive_extension_check(G: LinearRelation, H: LinearRelation,
                               tol: Tolerance = DEFAULT_TOL, samples: int = 1000,
                               seed: int = 0) -> Verdict:
    """Audit ``H`` as a maximal monotone extension of ``G`` from first principles.

    Checks graph inclusion, ``dim gra H = n``, sampled monotonicity of ``H``
    and ``dom H = (H 0)^perp``.
    """
    if not extension_of(G, H, tol):
        return Verdict(False, 0, float("inf"), reason="gra G not contained in gra H")
    if H.dim != H.n:
        return Verdict(False, 0, float("inf"), reason=f"dim gra H = {H.dim} != n = {H.n}")
    sampled = sample_monotonicity(H, samples, seed, tol)
    if not sampled.passed:
        return Verdict(False, samples, sampled.worst_violation, sampled.witness,
                       "H is not monotone")
    if not subspace_equal(domain(H, tol), orth_complement(image_at_zero(H, tol), tol), tol):
        return Verdict(False, samples, sampled.worst_violation,
                       reason="dom H != (H 0)^perp")
    return Verdict(True, samples, sampled.worst_violation)
