import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from monoext.errors import AmbientMismatch, NotFinite, NotSquare, NotSymmetric, ShapeMismatch
from monoext.numerics import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    as_mat,
    echelon_basis,
    nullspace,
    orth_complement,
    pinv,
    span,
    subspace_contains,
    subspace_equal,
    subspace_includes,
    subspace_sum,
    svd_rank,
    sym_eig,
)

from conftest import SQ2, SQ201

E62_AB = np.array([[-1, 0, 1, 0], [0, 0, 0, 1], [0, -1, 0, 1]], dtype=float)
E63_AB = np.array([[1, 1, 1, 5], [2, 0, 1, 7], [3, 1, 0, 2]], dtype=float)


def test_tolerance_cutoff():
    t = Tolerance(rel=1e-10, abs=1e-12)
    assert t.cutoff(1.0) == 1e-10
    assert t.cutoff(0.0) == 1e-12
    with pytest.raises(ValueError):
        Tolerance(rel=-1.0)


def test_as_mat_rejects_bad_input():
    with pytest.raises(NotFinite):
        as_mat([[1.0, np.nan]])
    with pytest.raises(ShapeMismatch):
        as_mat(np.ones((2, 2, 2)))
    with pytest.raises(ShapeMismatch):
        as_mat(np.ones((2, 3)), cols=2)
    assert as_mat([1.0, 2.0]).shape == (1, 2)
    assert as_mat(np.zeros((0, 3)), cols=3).shape == (0, 3)


@pytest.mark.parametrize("m, r", [(np.eye(3), 3), (E63_AB, 3), (np.zeros((2, 2)), 0)])
def test_svd_rank(m, r):
    assert svd_rank(m) == r


def test_nullspace_examples():
    assert nullspace(np.eye(2)).dim == 0
    ns = nullspace(E62_AB)
    assert ns.dim == 1
    assert subspace_equal(ns, Subspace.span([1, 0, 1, 0]))
    assert np.allclose(np.abs(ns.basis[:, 0]), np.array([1, 0, 1, 0]) / SQ2)
    ns = nullspace([[-5.0, 1.0]])
    assert subspace_equal(ns, Subspace.span([1, 5]))


def test_sym_eig_examples():
    lam, V = sym_eig(np.diag([2.0, -1.0]))
    assert np.allclose(lam, [2, -1])
    S = E62_AB[:, :2] @ E62_AB[:, 2:].T
    lam, V = sym_eig(S + S.T)
    assert np.allclose(lam, [-1 + SQ2, -2, -1 - SQ2], atol=1e-12)
    assert np.allclose(V.T @ V, np.eye(3))
    S = E63_AB[:, :2] @ E63_AB[:, 2:].T
    lam, _ = sym_eig(S + S.T)
    assert np.allclose(lam, [13 + SQ201, 13 - SQ201, -6], atol=1e-9)


def test_sym_eig_errors():
    with pytest.raises(NotSquare):
        sym_eig(np.ones((2, 3)))
    with pytest.raises(NotSymmetric):
        sym_eig([[0.0, 1.0], [0.0, 0.0]])


def test_pinv_examples():
    assert np.allclose(pinv(np.eye(3)), np.eye(3))
    assert np.allclose(pinv(-2 * np.eye(2)), -0.5 * np.eye(2))
    assert np.allclose(pinv([[3.0], [4.0]]), [[3 / 25, 4 / 25]])


def test_subspace_equal_examples():
    assert subspace_equal(Subspace.span([1, 0]), Subspace.span([-1, 0]))
    assert not subspace_equal(Subspace.span([1, 0]), Subspace.span([0, 1]))
    a = span(np.array([[1, 1], [1, -1]]) / SQ2)
    assert subspace_equal(a, Subspace.full(2))
    with pytest.raises(AmbientMismatch):
        subspace_equal(Subspace.full(2), Subspace.full(3))


def test_subspace_contains_examples():
    g = nullspace(E62_AB)
    assert subspace_contains(g, [1, 0, 1, 0])
    assert subspace_contains(g, np.zeros(4))
    assert not subspace_contains(g, [1, 1, 0, 0])
    with pytest.raises(AmbientMismatch):
        subspace_contains(g, [1, 0])


def test_orth_complement_examples():
    assert orth_complement(Subspace.full(2)).dim == 0
    c = orth_complement(Subspace.span([-1, 1]))
    assert subspace_equal(c, Subspace.span([1, 1]))
    assert np.isclose(abs(c.basis[0, 0]), 1 / SQ2)


def test_sum_and_includes():
    s = subspace_sum(Subspace.span([1, 0, 0]), Subspace.span([0, 1, 0]))
    assert s.dim == 2
    assert subspace_includes(Subspace.span([1, 1, 0]), s)
    assert not subspace_includes(Subspace.span([0, 0, 1]), s)


def test_echelon_basis_is_canonical():
    s1 = Subspace.span([1, 2, 0], [0, 1, 1])
    s2 = Subspace.span([1, 3, 1], [2, 5, 1])
    assert np.allclose(echelon_basis(s1), echelon_basis(s2))
    assert np.allclose(echelon_basis(s1), [[1, 0, -2], [0, 1, 1]])


small = arrays(np.float64, st.tuples(st.integers(1, 5), st.integers(1, 5)),
               elements=st.floats(-10, 10, allow_nan=False, width=64))


@settings(max_examples=60, deadline=None)
@given(small)
def test_rank_nullity(m):
    assert svd_rank(m) + nullspace(m).dim == m.shape[1]


@settings(max_examples=60, deadline=None)
@given(small)
def test_pinv_penrose_identities(m):
    P = pinv(m)
    scale = max(1.0, np.abs(m).max())
    assert np.allclose(m @ P @ m, m, atol=1e-8 * scale)
    assert np.allclose((m @ P).T, m @ P, atol=1e-8)


@settings(max_examples=60, deadline=None)
@given(small)
def test_complement_dimensions(m):
    s = span(m)
    c = orth_complement(s)
    assert s.dim + c.dim == m.shape[0]
    assert np.allclose(s.basis.T @ c.basis, 0, atol=1e-10)
    assert subspace_equal(orth_complement(c), s)
