"""Acceptance criteria, each under its stated time limit."""

import math
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from disclab.constructions import (
    binomial_abs_identity_check,
    disc1_closed,
    hadamard01,
    haar,
    haar_neg,
    haar_pm,
    haar_pos,
    haar_tree,
    power_matrix,
)
from disclab.detlb import (
    detlb_exact,
    hadamard_detlb_certificate,
    is_tum,
    lsv_check,
    verify_detlb_amplification,
)
from disclab.disc import (
    disc_exact,
    multiset_invariance_check,
    pm_sos_check,
    verify_disc_amplification,
)
from disclab.exact import IntMatrix, det_exact
from disclab.vcdim import vc_dimension
from disclab.vecdisc import VectorAssignment, greedy_heavy_path
from disclab.vollb import estimate_volume

import oracles


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def test_c01_det_haar():
    with within(1):
        for k in (1, 2, 3, 4):
            assert abs(det_exact(haar(k))) == 2 ** (2**k - 1)


def test_c02_disc1_closed():
    with within(5):
        got = [disc_exact(haar(k), "one").value for k in (1, 2, 3)]
        assert got == [disc1_closed(k) for k in (1, 2, 3)]
        assert got == [1, Fraction(3, 2), Fraction(3, 2)]


def test_c03_multiset_invariance():
    with within(5):
        for k in (1, 2, 3):
            assert multiset_invariance_check(k, mode="exhaustive")


def test_c04_binomial_identity():
    with within(1):
        for k in range(1, 21):
            r = binomial_abs_identity_check(k)
            assert r["equal"] and r["lhs"] == oracles.binomial_abs_sum(k)


def test_c05_detlb_haar():
    with within(30):
        c1 = detlb_exact(haar(1))
        assert c1.det ** 2 == 4 and c1.order == 2  # exactly sqrt(2)
        for k in (1, 2, 3):
            c = detlb_exact(haar(k))
            assert not c.partial
            assert abs(c.det) <= 2**c.order


def test_c06_tum():
    with within(30):
        for k in (1, 2, 3):
            assert is_tum(haar_pos(k)).tum
            assert is_tum(haar_neg(k)).tum


def test_c07_amplification():
    cases = [(haar(1), 1), (haar(1), 2), (haar_pm(1), 1)]
    with within(60):
        for A, N in cases:
            d = verify_disc_amplification(A, N)
            assert d["lhs"] >= Fraction(N) * disc_exact(A, "one").value / 2
            assert d["holds"]
            e = verify_detlb_amplification(A, N)
            assert e["lhs"] <= math.sqrt(math.e * N) * detlb_exact(A).value_float + 1e-9
            assert e["holds"]


def test_c08_lsv():
    rng = random.Random(20240)
    with within(120):
        for _ in range(200):
            m, n = rng.randint(1, 5), rng.randint(1, 5)
            A = IntMatrix(m, n, [rng.randint(0, 1) for _ in range(m * n)])
            assert lsv_check(A)["holds"]


def test_c09_sos():
    with within(5):
        for k in (1, 2):
            r = pm_sos_check(k)
            assert r["holds"]
            assert 2 * disc_exact(haar_pm(k), "inf").value >= disc_exact(haar(k), "inf").value


def test_c10_vecdisc_certificate():
    with within(5):
        for k in (1, 2, 3):
            tree = haar_tree(k)
            rng = np.random.Generator(np.random.Philox(key=(1 << 64) | k))
            for _ in range(100):
                va = VectorAssignment.random(2**k, 8, rng)
                assert greedy_heavy_path(tree, va).sq_norm >= k + 1 - 1e-6


def test_c11_volume_estimates():
    with within(60):
        for A, expected in [(IntMatrix.identity(2), 4.0),
                            (IntMatrix.from_rows([[1, 0], [0, 1], [1, 1]]), 3.0)]:
            est = estimate_volume(A, (0, 1), 10**6, 1)
            assert abs(est.volume_mean - expected) <= 0.05 * expected
            assert abs(est.volume_mean - expected) <= 3 * est.stderr + 1e-12


def test_c12_vc_suite():
    with within(5):
        for N in (1, 2, 3):
            assert vc_dimension(power_matrix(N)).d == N
        cert = hadamard_detlb_certificate(power_matrix(2))
        assert cert.bound == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
        exact = detlb_exact(power_matrix(2))
        assert exact.value_float == 1
        assert cert.bound <= exact.value_float


def test_c13_hadamard_det():
    with within(1):
        for n in (1, 2, 4, 8):
            d = abs(det_exact(hadamard01(n)))
            assert (2**n * d) ** 2 >= n**n


def test_c14_verify_cli():
    cmd = [sys.executable, "-m", "disclab.cli", "verify", "--suite", "paper-claims",
           "--max-k", "2", "--seed", "1"]
    with within(120):
        first = subprocess.run(cmd, capture_output=True, check=False)
        second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
    statuses = [line.split()[1] for line in first.stdout.decode().splitlines()[1:]]
    assert statuses.count("INFO") == 1
    assert statuses.count("PASS") == len(statuses) - 1 == 12
