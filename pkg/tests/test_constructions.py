import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from disclab import config
from disclab.constructions import (
    binomial_abs_identity_check,
    build_gap_instance,
    build_kron_instance,
    disc1_closed,
    gap_certificate,
    gap_parameters,
    hadamard01,
    haar,
    haar_neg,
    haar_pm,
    haar_pos,
    haar_tilde,
    haar_tree,
    matrix_from_tree,
    power_matrix,
)
from disclab.errors import InvalidParams, NotPowerOfTwo, OutOfRange, SizeLimit
from disclab.exact import det_exact

from oracles import binomial_abs_sum


def test_haar_examples():
    assert haar(0).to_rows() == [[1]]
    assert haar(1).to_rows() == [[1, 1], [1, -1]]
    assert haar(2).to_rows() == [[1, 1, 1, 0], [1, -1, 0, 1], [1, 1, -1, 0], [1, -1, 0, -1]]


def test_haar_tilde():
    assert haar_tilde(1).to_rows() == [[1], [-1]]
    H = haar(2).to_rows()
    assert haar_tilde(2).to_rows() == [r[1:] for r in H]


def test_pos_neg_examples():
    assert haar_pos(0).to_rows() == [[1]]
    assert haar_neg(0).to_rows() == [[0]]
    assert haar_pos(1).to_rows() == [[1, 1], [1, 0]]
    assert haar_neg(1).to_rows() == [[0, 0], [0, 1]]
    assert haar_pm(0).to_rows() == [[1], [0]]
    assert haar_pm(1).to_rows() == [[1, 1], [1, 0], [0, 0], [0, 1]]


@pytest.mark.parametrize("k", range(6))
def test_pos_minus_neg_is_haar(k):
    assert haar_pos(k) - haar_neg(k) == haar(k)


@pytest.mark.parametrize("k", range(4))
def test_pm_rows_split_haar(k):
    P, H = haar_pm(k), haar(k)
    half = 2**k
    for i in range(half):
        assert [a - b for a, b in zip(P.row(i), P.row(i + half))] == list(H.row(i))


@pytest.mark.parametrize("k", range(6))
def test_haar_columns_orthogonal(k):
    H = haar(k)
    for a in range(H.cols):
        for b in range(a + 1, H.cols):
            assert sum(x * y for x, y in zip(H.col(a), H.col(b))) == 0


@pytest.mark.parametrize("k", range(5))
def test_haar_det(k):
    assert abs(det_exact(haar(k))) == 2 ** (2**k - 1)


@pytest.mark.parametrize("k", range(6))
def test_haar_rows_have_k_plus_one_nonzeros(k):
    H = haar(k)
    assert all(sum(1 for v in H.row(i) if v) == k + 1 for i in range(H.rows))


@pytest.mark.parametrize("k", range(6))
def test_tree_round_trip(k):
    assert matrix_from_tree(haar_tree(k)) == haar(k)


def test_tree_shape():
    t = haar_tree(3)
    assert t.size == 8
    paths = t.paths()
    assert sorted(paths) == list(range(8))
    assert all(len(p) == 4 for p in paths.values())


def test_power_matrix():
    assert power_matrix(1).to_rows() == [[0], [1]]
    assert power_matrix(2).to_rows() == [[0, 0], [1, 0], [0, 1], [1, 1]]
    for N in range(1, 5):
        rows = {tuple(r) for r in power_matrix(N).to_rows()}
        assert len(rows) == 2**N


def test_hadamard01():
    assert hadamard01(1).to_rows() == [[1]]
    assert hadamard01(2).to_rows() == [[1, 1], [1, 0]]
    assert abs(det_exact(hadamard01(4))) == 2
    with pytest.raises(NotPowerOfTwo):
        hadamard01(3)


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_hadamard01_det_bound(n):
    d = abs(det_exact(hadamard01(n)))
    assert (2**n * d) ** 2 >= n**n
    # the row reduction gives the sharper 2^-(n-1) n^(n/2)
    assert (2 ** (n - 1) * d) ** 2 == n**n


def test_disc1_closed():
    assert disc1_closed(0) == 1
    assert disc1_closed(1) == 1
    assert disc1_closed(2) == Fraction(3, 2)
    assert disc1_closed(3) == Fraction(3, 2)


def test_binomial_identity():
    assert binomial_abs_identity_check(1) == {"lhs": 2, "rhs": 2, "equal": True}
    assert binomial_abs_identity_check(2)["lhs"] == 4
    assert binomial_abs_identity_check(3)["lhs"] == 12
    for k in range(1, 21):
        r = binomial_abs_identity_check(k)
        assert r["equal"] and r["lhs"] == binomial_abs_sum(k)


def test_kron_instances():
    assert build_kron_instance(1, 1, "haar").to_rows() == [[0, 0], [0, 0], [1, 1], [1, -1]]
    assert build_kron_instance(2, 1, "haar").shape == (8, 4)
    assert build_kron_instance(1, 1, "haar_pm").shape == (8, 2)


def test_gap_certificate_examples():
    c = gap_certificate(1, 1, "haar")
    assert c["disc_lower"] == Fraction(1, 2)
    assert c["detlb_upper"] == pytest.approx(2 * math.sqrt(math.e), abs=1e-12)
    c = gap_certificate(2, 2, "haar")
    assert c["disc_lower"] == Fraction(3, 2)
    assert c["detlb_upper"] == pytest.approx(2 * math.sqrt(2 * math.e), abs=1e-12)
    c = gap_certificate(1, 0, "haar")
    assert c["disc_lower"] == Fraction(1, 2)
    c = gap_certificate(1, 1, "haar_pm")
    assert c["disc_lower"] == Fraction(1, 4)
    assert c["detlb_upper"] == pytest.approx(math.sqrt(math.e) * math.sqrt(2 * math.e), abs=1e-12)


def test_gap_small_m():
    inst = build_gap_instance(200, 16, 0.5)
    assert inst.branch == "small-m"
    assert inst.k == 4
    assert inst.matrix.shape == (200, 16)
    assert [inst.matrix.row(i) for i in range(16)] == [haar(4).row(i) for i in range(16)]
    assert all(not any(inst.matrix.row(i)) for i in range(16, 200))


def test_gap_kron_degenerate():
    inst = build_gap_instance(1024, 16, 0.1)
    assert (inst.branch, inst.N, inst.k, inst.degenerate) == ("kron", 6, 0, True)
    assert inst.matrix.shape == (1024, 16)
    d = inst.to_json_dict()
    assert d["branch"] == "kron" and d["degenerate"] is True


def test_gap_errors():
    with pytest.raises(OutOfRange):
        build_gap_instance(2**40, 16, 0.1)
    with pytest.raises(InvalidParams):
        gap_parameters(100, 1, 0.5)
    with pytest.raises(InvalidParams):
        gap_parameters(100, 16, 1.0)
    with pytest.raises(OutOfRange):
        gap_parameters(8, 16, 0.5)


def test_gap_dimensions_on_random_triples():
    rng = random.Random(2024)
    done = 0
    while done < 50:
        n = rng.randint(2, 64)
        eps = rng.uniform(0.05, 0.95)
        top = min(2 ** (n ** (1 - eps)), 4096)
        if top < n:
            continue
        m = rng.randint(n, int(max(n, top)))
        try:
            inst = build_gap_instance(m, n, eps)
        except OutOfRange:
            continue
        assert inst.matrix.shape == (m, n)
        done += 1


def test_size_limit():
    with config.overridden(max_entries=10):
        with pytest.raises(SizeLimit):
            haar(2)


@given(st.integers(0, 4))
def test_haar_entries_small(k):
    assert set(haar(k).entries) <= {-1, 0, 1}
