"""Slow reference implementations used only to cross-check the library.

Nothing here shares code with the package beyond ``IntMatrix`` as a carrier.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def det_gauss(rows) -> int:
    """Determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(v) for v in r] for r in rows]
    n = len(a)
    sign, out = 1, Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        out *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    result = sign * out
    assert result.denominator == 1
    return int(result)


def all_colorings(n):
    return itertools.product((-1, 1), repeat=n)


def row_sums(rows, x):
    return [sum(a * b for a, b in zip(r, x)) for r in rows]


def disc_inf(rows, n) -> int:
    if n == 0:
        return 0
    return min(max(abs(s) for s in row_sums(rows, x)) for x in all_colorings(n))


def disc_one(rows, n) -> Fraction:
    return min(Fraction(sum(abs(s) for s in row_sums(rows, x)), len(rows))
               for x in all_colorings(n))


def disc_p(rows, n, p: float) -> float:
    return min((sum(abs(s) ** p for s in row_sums(rows, x)) / len(rows)) ** (1 / p)
               for x in all_colorings(n))


def herdisc(rows, n) -> int:
    best = 0
    for size in range(1, n + 1):
        for cols in itertools.combinations(range(n), size):
            proj = [[r[c] for c in cols] for r in rows]
            best = max(best, disc_inf(proj, size))
    return best


def detlb(rows, n) -> float:
    """max |det|^(1/k) over all square submatrices, compared in floats."""
    m = len(rows)
    best = 0.0
    for k in range(1, min(m, n) + 1):
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                d = det_gauss([[rows[i][j] for j in cs] for i in rs])
                if d:
                    best = max(best, abs(d) ** (1 / k))
    return best


def is_tum(rows, n) -> bool:
    m = len(rows)
    for k in range(1, min(m, n) + 1):
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                if det_gauss([[rows[i][j] for j in cs] for i in rs]) not in (-1, 0, 1):
                    return False
    return True


def vc_dim(rows, n) -> int:
    best = 0
    for size in range(1, n + 1):
        for cols in itertools.combinations(range(n), size):
            if len({tuple(r[c] for c in cols) for r in rows}) == 2**size:
                best = size
    return best


def binomial_abs_sum(k: int) -> int:
    return sum(math.comb(k, l) * abs(k - 2 * l) for l in range(k + 1))
