import math

import numpy as np
import pytest

from disclab.constructions import haar, haar_tree
from disclab.errors import DimensionMismatch, NonUnitVector
from disclab.exact import IntMatrix
from disclab.vecdisc import VectorAssignment, greedy_heavy_path, vecdisc_row_norm


def _rng(seed, k):
    return np.random.Generator(np.random.Philox(key=(seed << 64) | k))


def test_parallel_vectors():
    va = VectorAssignment(2, [[1, 0], [1, 0]])
    c = greedy_heavy_path(haar_tree(1), va)
    assert c.row_index == 0
    assert c.accumulated.tolist() == [2.0, 0.0]
    assert c.sq_norm == 4


def test_orthogonal_vectors():
    va = VectorAssignment(2, [[1, 0], [0, 1]])
    assert greedy_heavy_path(haar_tree(1), va).sq_norm == pytest.approx(2.0)


def test_row_norm_examples():
    A = IntMatrix.from_rows([[0, 0], [1, 1]])
    va = VectorAssignment(2, [[1, 0], [1, 0]])
    assert vecdisc_row_norm(A, va, 0) == 0
    assert vecdisc_row_norm(haar(1), va, 0) == 2


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_certificate_properties(k):
    tree, H = haar_tree(k), haar(k)
    rng = _rng(42, k)
    for _ in range(100):
        va = VectorAssignment.random(2**k, 8, rng)
        c = greedy_heavy_path(tree, va)
        assert c.sq_norm >= k + 1 - 1e-6
        assert c.partial_sq_norm >= k - 1e-6
        # second route: the certificate row read off the matrix
        assert vecdisc_row_norm(H, va, c.row_index) == pytest.approx(math.sqrt(c.sq_norm))
        best = max(vecdisc_row_norm(H, va, i) for i in range(H.rows))
        assert best >= math.sqrt(k + 1) - 1e-6
        # the path follows the signs in that row
        assert all(H[c.row_index, col] == s for col, s in c.path)


def test_each_step_adds_at_least_one():
    k = 4
    tree = haar_tree(k)
    rng = _rng(3, k)
    va = VectorAssignment.random(2**k, 5, rng)
    c = greedy_heavy_path(tree, va)
    acc = np.zeros(5)
    prev = 0.0
    for col, s in c.path:
        acc = acc + s * va.vectors[col]
        cur = float(acc @ acc)
        assert cur >= prev + 1 - 1e-6
        prev = cur


def test_negation_symmetry():
    rng = _rng(8, 3)
    va = VectorAssignment.random(8, 8, rng)
    neg = VectorAssignment(8, -va.vectors)
    a = greedy_heavy_path(haar_tree(3), va)
    b = greedy_heavy_path(haar_tree(3), neg)
    assert a.sq_norm == pytest.approx(b.sq_norm)


def test_validation():
    with pytest.raises(NonUnitVector):
        VectorAssignment(2, [[1, 1], [1, 0]])
    with pytest.raises(DimensionMismatch):
        VectorAssignment(3, [[1, 0]])
    with pytest.raises(DimensionMismatch):
        greedy_heavy_path(haar_tree(2), VectorAssignment(1, [[1.0]]))


def test_json_round_trip():
    va = VectorAssignment.random(4, 3, _rng(1, 1))
    back = VectorAssignment.from_json(va.to_json())
    assert np.array_equal(back.vectors, va.vectors)
