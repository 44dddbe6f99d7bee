import numpy as np
import pytest

from monoext.errors import BadParameters, GenerationFailed
from monoext.extend import extend_domain_preserving, extend_vg
from monoext.linrel import zero_relation
from monoext.monotone import is_maximal, is_monotone
from monoext.numerics import subspace_equal
from monoext.oracle import (
    exhaustive_extension_check,
    random_monotone_relation,
    random_nonmonotone_relation,
    sample_monotonicity,
)


def test_sample_monotonicity_examples(fix_id, neg_id, e63):
    assert sample_monotonicity(fix_id, 1000).passed
    v = sample_monotonicity(neg_id, 1000)
    assert not v.passed and v.witness is not None and v.worst_violation > 0.5
    assert sample_monotonicity(e63, 1000).passed
    assert sample_monotonicity(zero_relation(2)).passed


def test_sampling_is_seeded(e63):
    assert sample_monotonicity(e63, 50, seed=3) == sample_monotonicity(e63, 50, seed=3)


def test_random_monotone_examples():
    assert is_maximal(random_monotone_relation(2, 2, 0))
    r = is_monotone(random_monotone_relation(2, 3, 0))
    assert r.monotone and r.k == 1
    G = random_monotone_relation(2, 4, 0)
    assert G.dim == 0 and is_monotone(G).monotone
    with pytest.raises(BadParameters):
        random_monotone_relation(2, 5, 0)
    with pytest.raises(BadParameters):
        random_monotone_relation(3, 2, 0)


def test_random_monotone_is_deterministic():
    a = random_monotone_relation(3, 4, 11)
    b = random_monotone_relation(3, 4, 11)
    assert np.array_equal(a.A, b.A) and np.array_equal(a.B, b.B)


def test_random_nonmonotone_examples(neg_id):
    assert not is_monotone(random_nonmonotone_relation(2, 2, 0, M=-np.eye(2))).monotone
    r = is_monotone(random_nonmonotone_relation(2, 3, 5))
    assert not r.monotone and r.k != 1
    G = random_nonmonotone_relation(1, 1, 0, M=[[-1.0]])
    assert subspace_equal(G.graph, neg_id.graph)
    with pytest.raises(GenerationFailed):
        random_nonmonotone_relation(2, 2, 0, M=np.eye(2), max_attempts=3)
    with pytest.raises(BadParameters):
        random_nonmonotone_relation(2, 4, 0)


def test_exhaustive_extension_check_examples(e62, e63, fix_id):
    assert exhaustive_extension_check(e62, extend_vg(e62).relation).passed
    assert exhaustive_extension_check(e63, extend_domain_preserving(e63).relation).passed
    v = exhaustive_extension_check(e63, fix_id)
    assert not v.passed and "contained" in v.reason
    v = exhaustive_extension_check(e62, e62)
    assert not v.passed and "dim" in v.reason
