"""VC dimension of 0/1 matrices and the random-coloring experiment."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidParams, NotBinary
from .exact import IntMatrix

MAX_SHATTER_COLS = 20


@dataclass
class ShatterWitness:
    cols: tuple[int, ...]
    pattern_rows: dict[tuple[int, ...], int]

    def to_json_dict(self) -> dict:
        return {"cols": list(self.cols),
                "pattern_rows": {"".join(map(str, p)): r
                                 for p, r in sorted(self.pattern_rows.items())}}


def _require_binary(A: IntMatrix) -> None:
    if not A.is_binary():
        raise NotBinary("expected a matrix with entries in {0, 1}")


def is_shattered(A: IntMatrix, cols: Sequence[int]) -> Optional[ShatterWitness]:
    """Witness mapping every 0/1 pattern on ``cols`` to the first row realizing it."""
    _require_binary(A)
    cols = tuple(cols)
    if len(cols) > MAX_SHATTER_COLS:
        raise InvalidParams(f"at most {MAX_SHATTER_COLS} columns, got {len(cols)}")
    if len(set(cols)) != len(cols) or any(not 0 <= c < A.cols for c in cols):
        raise InvalidParams(f"bad column set {cols} for {A.cols} columns")
    if 2 ** len(cols) > A.rows:
        return None
    seen: dict[tuple[int, ...], int] = {}
    for i in range(A.rows):
        row = A.row(i)
        seen.setdefault(tuple(row[c] for c in cols), i)
    if len(seen) < 2 ** len(cols):
        return None
    return ShatterWitness(cols, seen)


@dataclass
class VCResult:
    d: int
    witness: ShatterWitness

    def to_json_dict(self) -> dict:
        return {"d": self.d, **self.witness.to_json_dict()}


def vc_dimension(A: IntMatrix) -> VCResult:
    """Largest shattered column set (lexicographically first at that size).

    Levelwise search: a set of size ``s + 1`` is tried only when all of its
    ``s``-subsets are shattered, and sizes beyond ``log2(#distinct rows)``
    are never tried.
    """
    _require_binary(A)
    if A.cols > MAX_SHATTER_COLS:
        raise InvalidParams(f"at most {MAX_SHATTER_COLS} columns, got {A.cols}")
    distinct = len({A.row(i) for i in range(A.rows)})
    ceiling = min(A.cols, distinct.bit_length() - 1)
    best = ShatterWitness((), {(): 0})
    level = {(): best}
    for size in range(1, ceiling + 1):
        nxt = {}
        for cols in itertools.combinations(range(A.cols), size):
            if any(sub not in level for sub in itertools.combinations(cols, size - 1)):
                continue
            w = is_shattered(A, cols)
            if w is not None:
                nxt[cols] = w
        if not nxt:
            break
        level = nxt
        best = level[min(level)]
    return VCResult(len(best.cols), best)


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # counter-based: each trial owns its stream, independent of scheduling
    return np.random.Generator(np.random.Philox(key=(seed << 64) | trial))


def random_colorings(n: int, trials: int, seed: int) -> np.ndarray:
    """``trials x n`` matrix of uniform +-1 entries, row ``t`` keyed by ``(seed, t)``."""
    if seed < 0:
        raise InvalidParams("seed must be non-negative")
    out = np.empty((trials, n), dtype=np.int64)
    for t in range(trials):
        out[t] = _trial_rng(seed, t).integers(0, 2, size=n) * 2 - 1
    return out


@dataclass
class ColoringStats:
    trials: int
    seed: int
    mean: float
    max: int
    stddev: float
    d: Optional[int] = None
    cols: Optional[tuple[int, ...]] = None
    normalized_ratio: Optional[float] = None
    constant: bool = False

    def to_json_dict(self) -> dict:
        return {"d": self.d, "cols": list(self.cols) if self.cols is not None else None,
                "trials": self.trials, "seed": self.seed, "mean": self.mean,
                "max": self.max, "stddev": self.stddev,
                "normalized_ratio": self.normalized_ratio, "constant": self.constant}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def random_coloring_stats(A: IntMatrix, trials: int, seed: int) -> ColoringStats:
    """Statistics of ``||A x||_inf`` over uniformly random colorings.

    For 0/1 input also reports ``mean / sqrt(n d)`` with ``d`` the VC
    dimension.  Constant matrices are flagged rather than rejected.
    """
    if trials < 1:
        raise InvalidParams("trials must be >= 1")
    X = random_colorings(A.cols, trials, seed)
    rows = np.array(A.to_rows(), dtype=object)
    bound = max(sum(abs(v) for v in A.row(i)) for i in range(A.rows))
    if bound < 2**62:
        rows = rows.astype(np.int64)
    else:
        X = X.astype(object)
    values = np.abs(X @ rows.T).max(axis=1)
    vals = [int(v) for v in values]
    mean = sum(vals) / trials
    stddev = math.sqrt(sum((v - mean) ** 2 for v in vals) / trials)
    stats = ColoringStats(trials, seed, mean, max(vals), stddev,
                          constant=len(set(A.entries)) == 1)
    if A.is_binary():
        vc = vc_dimension(A)
        stats.d = vc.d
        stats.cols = vc.witness.cols
        if vc.d > 0:
            stats.normalized_ratio = mean / math.sqrt(A.cols * vc.d)
    return stats
