"""Monte-Carlo volume lower bound.

For a column subset ``S`` the slice ``{x in R^S : ||A_S x||_inf <= 1}`` is
sampled by rejection from a box.  The box comes from an invertible square
row-submatrix ``B`` of ``A_S``: since ``||B x||_inf <= 1`` on the slice,
``|x_i| <= sum_j |(B^-1)_ij|``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import config
from .errors import BudgetExceeded, InvalidParams, RankDeficient
from .exact import IntMatrix, format_rational

BLOCK = 1 << 16


@dataclass(frozen=True)
class BoundingBox:
    subset: tuple[int, ...]
    basis_rows: tuple[int, ...]
    radii: tuple[Fraction, ...]

    @property
    def volume(self) -> Fraction:
        out = Fraction(1)
        for r in self.radii:
            out *= 2 * r
        return out


def _independent_rows(rows: list[list[int]], k: int) -> list[int]:
    """Greedily pick the first rows (in order) that are linearly independent."""
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    chosen = []
    for i, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [a - f * c for a, c in zip(v, b)]
        piv = next((j for j, a in enumerate(v) if a), None)
        if piv is None:
            continue
        basis.append((piv, v))
        chosen.append(i)
        if len(chosen) == k:
            break
    return chosen


def _inverse(B: list[list[int]]) -> list[list[Fraction]]:
    k = len(B)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(B)]
    for c in range(k):
        p = next(i for i in range(c, k) if M[i][c])
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for i in range(k):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return [row[k:] for row in M]


def bounding_box(A: IntMatrix, S: Sequence[int]) -> BoundingBox:
    S = tuple(S)
    if not S or len(set(S)) != len(S) or any(not 0 <= c < A.cols for c in S):
        raise InvalidParams(f"bad column subset {S}")
    k = len(S)
    proj = [[A[i, c] for c in S] for i in range(A.rows)]
    chosen = _independent_rows(proj, k)
    if len(chosen) < k:
        raise RankDeficient(f"columns {S} have rank {len(chosen)} < {k}; the slice is unbounded")
    inv = _inverse([proj[i] for i in chosen])
    radii = tuple(sum(abs(v) for v in row) for row in inv)
    return BoundingBox(S, tuple(chosen), radii)


@dataclass
class VolumeEstimate:
    subset: tuple[int, ...]
    k: int
    volume_mean: float
    stderr: float
    samples: int
    seed: int
    accepted: int = 0
    box_volume: Optional[Fraction] = None

    @property
    def inv_root(self) -> float:
        if self.volume_mean <= 0 or math.isinf(self.volume_mean):
            return 0.0 if math.isinf(self.volume_mean) else math.inf
        return self.volume_mean ** (-1.0 / self.k)

    def to_json_dict(self) -> dict:
        finite = not math.isinf(self.volume_mean)
        return {"S": list(self.subset), "k": self.k,
                "volume": self.volume_mean if finite else None,
                "stderr": self.stderr if finite else None,
                "inv_root": self.inv_root if math.isfinite(self.inv_root) else None,
                "samples": self.samples,
                "box_volume": format_rational(self.box_volume) if self.box_volume else None}


def _block_rng(seed: int, subset: tuple[int, ...], block: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed, block, len(subset), *subset])
    return np.random.Generator(np.random.Philox(ss))


def estimate_volume(A: IntMatrix, S: Sequence[int], samples: int, seed: int) -> VolumeEstimate:
    """Rejection-sample the slice volume; deterministic in ``(A, S, samples, seed)``."""
    if samples < 1:
        raise InvalidParams("samples must be >= 1")
    box = bounding_box(A, S)
    S = box.subset
    k = len(S)
    AS = np.array([[A[i, c] for c in S] for i in range(A.rows)], dtype=np.float64)
    radii = np.array([float(r) for r in box.radii])
    accepted = 0
    done = 0
    block = 0
    while done < samples:
        size = min(BLOCK, samples - done)
        rng = _block_rng(seed, S, block)
        X = rng.uniform(-1.0, 1.0, size=(size, k)) * radii
        accepted += int(np.count_nonzero(np.abs(X @ AS.T).max(axis=1) <= 1.0))
        done += size
        block += 1
    box_vol = float(box.volume)
    p = accepted / samples
    return VolumeEstimate(S, k, p * box_vol, box_vol * math.sqrt(p * (1 - p) / samples),
                          samples, seed, accepted, box.volume)


@dataclass
class VolLBResult:
    value: float
    argmax: Optional[tuple[int, ...]]
    table: list[VolumeEstimate] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"vollb": self.value,
                "argmax_S": list(self.argmax) if self.argmax else None,
                "table": [e.to_json_dict() for e in self.table]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def vollb_estimate(A: IntMatrix, max_k: int = 3, samples_per_subset: int = 100_000,
                   seed: int = 0, budget: Optional[int] = None) -> VolLBResult:
    """``max_S vol(slice_S)^(-1/|S|)`` over subsets with ``|S| <= max_k``.

    Rank-deficient subsets have an unbounded slice and contribute 0.
    """
    budget = config.current().vollb_subset_budget if budget is None else budget
    top = min(max_k, A.cols)
    if top < 1:
        raise InvalidParams("max_k must be >= 1")
    total = sum(math.comb(A.cols, k) for k in range(1, top + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} column subsets exceeds the budget of {budget}")
    result = VolLBResult(0.0, None)
    for k in range(1, top + 1):
        for S in itertools.combinations(range(A.cols), k):
            try:
                est = estimate_volume(A, S, samples_per_subset, seed)
            except RankDeficient:
                est = VolumeEstimate(S, k, math.inf, math.inf, 0, seed)
            result.table.append(est)
            if est.inv_root > result.value:
                result.value, result.argmax = est.inv_root, S
    return result
