"""Exact discrepancy of integer matrices.

Norms are written ``"inf"`` (max row), ``"one"`` (mean absolute row sum) or a
real ``p >= 1``.  ``p = 1`` and ``p = inf`` route to the exact paths; integral
``p`` is still exact internally (sums of integer powers), only the final
``p``-th root is a float.

Colorings are tuples of ``+1``/``-1``.  The search fixes the first entry to
``+1`` (``x`` and ``-x`` score the same) and, among optimal colorings,
returns the lexicographically smallest with ``-1 < +1``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import config
from .constructions import HaarTree, haar, haar_pm, haar_tilde, power_matrix
from .errors import DimensionMismatch, InvalidParams, SearchSpaceTooLarge
from .exact import IntMatrix, SubmatrixIndex, format_rational, kronecker, select_columns

Coloring = tuple[int, ...]
Norm = Union[str, float]

_LOW_BITS = 12
_INT64_SAFE = 2**62


def check_coloring(x: Sequence[int], n: int) -> Coloring:
    x = tuple(int(v) for v in x)
    if len(x) != n:
        raise DimensionMismatch(f"coloring has {len(x)} entries, matrix has {n} columns")
    if any(v not in (1, -1) for v in x):
        raise InvalidParams(f"coloring entries must be +1/-1, got {x}")
    return x


def normalize_norm(norm: Norm) -> Union[str, float]:
    """Return ``"inf"``, ``"one"`` or a float ``p > 1``."""
    if isinstance(norm, str):
        key = norm.strip().lower()
        if key in ("inf", "infinity", "max"):
            return "inf"
        if key in ("one", "1", "l1"):
            return "one"
        try:
            norm = float(key)
        except ValueError:
            raise InvalidParams(f"unknown norm {norm!r}") from None
    p = float(norm)
    if math.isnan(p) or p < 1:
        raise InvalidParams(f"norm p must be >= 1, got {norm!r}")
    if math.isinf(p):
        return "inf"
    if p == 1:
        return "one"
    return p


def _finish(norm, raw, m: int):
    """Convert the search objective into the reported value."""
    if norm == "inf":
        return int(raw)
    if norm == "one":
        return Fraction(int(raw), m)
    return (float(raw) / m) ** (1.0 / norm)


def _row_objective(norm, sums: Sequence[int]):
    if norm == "inf":
        return max((abs(s) for s in sums), default=0)
    if norm == "one":
        return sum(abs(s) for s in sums)
    if float(norm).is_integer():
        return sum(abs(s) ** int(norm) for s in sums)
    return sum(abs(s) ** norm for s in sums)


def disc_of_coloring(A: IntMatrix, x: Sequence[int], norm: Norm = "inf"):
    """``||Ax||_inf`` (int), ``||Ax||_1 / m`` (Fraction) or ``(||Ax||_p^p / m)^(1/p)`` (float)."""
    norm = normalize_norm(norm)
    x = check_coloring(x, A.cols)
    return _finish(norm, _row_objective(norm, A.matvec(x)), A.rows)


@dataclass
class DiscResult:
    norm: Union[str, float]
    value: Union[int, Fraction, float]
    witness: Coloring
    nodes_explored: int = 0

    def value_str(self) -> str:
        if isinstance(self.value, (int, Fraction)):
            return format_rational(self.value)
        return repr(float(self.value))

    def to_json_dict(self) -> dict:
        return {"norm": self.norm if isinstance(self.norm, str) else float(self.norm),
                "value": self.value_str(),
                "witness": list(self.witness),
                "nodes_explored": self.nodes_explored}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _reduced_rows(A: IntMatrix, norm) -> list[tuple[int, ...]]:
    """Rows that can affect the objective (all nonzero rows; for inf, one per +-pair)."""
    rows = [A.row(i) for i in range(A.rows) if any(A.row(i))]
    if norm != "inf":
        return rows
    seen, out = set(), []
    for r in rows:
        neg = tuple(-v for v in r)
        if r not in seen and neg not in seen:
            seen.add(r)
            out.append(r)
    return out


def _dtype_for(rows, norm):
    bound = max((sum(abs(v) for v in r) for r in rows), default=0)
    if norm == "inf" or norm == "one":
        big = bound * max(len(rows), 1)
    elif float(norm).is_integer():
        big = bound ** int(norm) * max(len(rows), 1)
    else:
        return np.float64
    return np.int64 if big < _INT64_SAFE else object


def _objective_block(norm, V):
    """Objective per row of ``V`` (colorings x matrix rows)."""
    absV = np.abs(V)
    if norm == "inf":
        return absV.max(axis=1)
    if norm == "one":
        return absV.sum(axis=1)
    if float(norm).is_integer():
        return (absV ** int(norm)).sum(axis=1)
    return (absV.astype(np.float64) ** norm).sum(axis=1)


def _exhaustive(rows: list[tuple[int, ...]], n: int, norm) -> tuple[object, int, int]:
    """Minimize over colorings with ``x_0 = +1``.

    Returns ``(objective, lex_key, visited)``, where bit ``n-1-j`` of
    ``lex_key`` is set iff ``x_j = +1``.
    """
    if not rows:
        return 0, (1 << (n - 1)) | 0, 1 if n else 0
    dtype = _dtype_for(rows, norm)
    A = np.array(rows, dtype=object if dtype is object else np.int64).T  # n x m
    if dtype is object:
        A = A.astype(object)
    free = n - 1
    b = min(free, _LOW_BITS)
    h = free - b
    low_cols = list(range(1 + h, n))
    # table row t: low column low_cols[i] is +1 iff bit (b-1-i) of t is set
    if b:
        t = np.arange(2**b)
        signs = np.stack([((t >> (b - 1 - i)) & 1) * 2 - 1 for i in range(b)], axis=1)
        if dtype is object:
            signs = signs.astype(object)
        table = signs @ A[low_cols]
    else:
        table = np.zeros((1, A.shape[1]), dtype=A.dtype)
    # high columns 1..h start at -1; column 0 is +1
    base = A[0].copy()
    for j in range(1, h + 1):
        base = base - A[j]
    best_val, best_key = None, None
    mask = 0
    for step in range(2**h):
        if step:
            flip = (step & -step).bit_length() - 1  # gray code: bit that changes
            bit = 1 << flip
            col = h - flip  # mask bit (h-1-i) <-> column i+1
            if mask & bit:
                base = base - 2 * A[col]
            else:
                base = base + 2 * A[col]
            mask ^= bit
        vals = _objective_block(norm, table + base)
        local = vals.min()
        if best_val is not None and local > best_val:
            continue
        t_idx = int(np.flatnonzero(vals == local)[0])
        key = (1 << (n - 1)) | (mask << b) | t_idx
        if best_val is None or local < best_val or key < best_key:
            best_val, best_key = local, key
    return best_val, best_key, 2**free


def _key_to_coloring(key: int, n: int) -> Coloring:
    return tuple(1 if (key >> (n - 1 - j)) & 1 else -1 for j in range(n))


def _branch_and_bound(rows: list[tuple[int, ...]], n: int) -> tuple[int, Coloring, int]:
    """Depth-first search in lexicographic order with admissible row bounds (inf norm)."""
    m = len(rows)
    if not m:
        return 0, (1,) + (-1,) * (n - 1), 1
    cols = [[r[j] for r in rows] for j in range(n)]
    remaining = [sum(abs(r[j]) for j in range(n)) for r in rows]
    sums = [0] * m
    best = [sum(remaining) + 1, None]
    x = [0] * n
    nodes = 0

    def dfs(j):
        nonlocal nodes
        nodes += 1
        if j == n:
            val = max(abs(s) for s in sums)
            if val < best[0]:
                best[0], best[1] = val, tuple(x)
            return
        c = cols[j]
        for i in range(m):
            remaining[i] -= abs(c[i])
        for s in ((1,) if j == 0 else (-1, 1)):
            x[j] = s
            for i in range(m):
                sums[i] += s * c[i]
            bound = max(abs(sums[i]) - remaining[i] for i in range(m))
            if bound < best[0]:
                dfs(j + 1)
            for i in range(m):
                sums[i] -= s * c[i]
        for i in range(m):
            remaining[i] += abs(c[i])

    dfs(0)
    return best[0], best[1], nodes


def disc_exact(A: IntMatrix, norm: Norm = "inf", method: str = "exhaustive",
               max_cols: Optional[int] = None) -> DiscResult:
    """Minimum over all +-1 colorings of the chosen norm of ``A x``.

    ``method="bnb"`` (inf norm only) prunes partial colorings whose best
    completion already matches the incumbent; both methods return the same
    value and witness.
    """
    norm = normalize_norm(norm)
    cap = config.current().exhaustive_cols if max_cols is None else max_cols
    n = A.cols
    if n > cap:
        raise SearchSpaceTooLarge(f"{n} columns exceeds the exhaustive cap of {cap}")
    rows = _reduced_rows(A, norm)
    if method == "bnb":
        if norm != "inf":
            raise InvalidParams("branch-and-bound is implemented for the inf norm only")
        val, witness, nodes = _branch_and_bound(rows, n)
        return DiscResult(norm, int(val), witness, nodes)
    if method != "exhaustive":
        raise InvalidParams(f"unknown method {method!r}")
    raw, key, visited = _exhaustive(rows, n, norm)
    return DiscResult(norm, _finish(norm, raw, A.rows), _key_to_coloring(key, n), visited)


def _disc_rows_inf(rows: list[tuple[int, ...]], n: int) -> tuple[int, Coloring]:
    if n == 0:
        return 0, ()
    raw, key, _ = _exhaustive(rows, n, "inf")
    return int(raw), _key_to_coloring(key, n)


@dataclass
class HerdiscResult:
    value: int
    witness_cols: Optional[SubmatrixIndex]
    witness_coloring: Coloring
    subsets_checked: int = 0

    def to_json_dict(self) -> dict:
        return {"value": str(self.value),
                "witness_cols": list(self.witness_cols.col_ids) if self.witness_cols else [],
                "witness": list(self.witness_coloring),
                "nodes_explored": self.subsets_checked}


def herdisc_exact(A: IntMatrix, max_cols: Optional[int] = None) -> HerdiscResult:
    """Maximum inf-norm discrepancy over nonempty column subsets.

    Subsets are scanned by size then lexicographically; a subset is skipped
    when even its largest absolute row sum cannot beat the incumbent.
    """
    cap = config.current().herdisc_cols if max_cols is None else max_cols
    n = A.cols
    if n > cap:
        raise SearchSpaceTooLarge(f"{n} columns exceeds the herdisc cap of {cap}")
    all_rows = A.to_rows()
    best = HerdiscResult(0, None, ())
    checked = 0
    for size in range(1, n + 1):
        for cols in itertools.combinations(range(n), size):
            proj = [tuple(r[j] for j in cols) for r in all_rows]
            ceiling = max(sum(abs(v) for v in r) for r in proj)
            if ceiling <= best.value:
                continue
            checked += 1
            sub = select_columns(A, cols)
            val, witness = _disc_rows_inf(_reduced_rows(sub, "inf"), size)
            if val > best.value:
                best = HerdiscResult(val, SubmatrixIndex(tuple(range(A.rows)), cols), witness)
    best.subsets_checked = checked
    return best


def adversarial_row(tree: HaarTree, x: Sequence[int]) -> dict:
    """Walk the Haar tree so every path entry agrees with the root's color.

    At column node ``t`` go left (entry ``+1``) when ``x_t == x_root`` and right
    otherwise, so each of the ``k+1`` path terms contributes ``x_root`` and
    ``|row . x| = k + 1``.
    """
    x = check_coloring(x, tree.size)
    target = x[tree.root]
    node = tree.root
    total = 0
    while True:
        left, right = tree.children[node]
        if x[node] == target or right is None:
            child, sign = left, 1
        else:
            child, sign = right, -1
        total += sign * x[node]
        if child.is_leaf:
            return {"row_index": child.index, "signed_sum": total}
        node = child.index


def verify_disc_amplification(A: IntMatrix, N: int) -> dict:
    """Check ``disc(P_N (x) A) >= N * disc_1(A) / 2`` exactly."""
    big = kronecker(power_matrix(N), A)
    lhs = disc_exact(big, "inf").value
    rhs = Fraction(N) * disc_exact(A, "one").value / 2
    return {"lhs": lhs, "rhs": rhs, "holds": lhs >= rhs}


def _colorings(n: int):
    return itertools.product((1, -1), repeat=n)


def multiset_invariance_check(k: int, mode: str = "exhaustive", trials: int = 1000,
                              seed: int = 0, max_cols: Optional[int] = None) -> bool:
    """Does ``haar_tilde(k) @ x`` always hold the same multiset as ``haar_tilde(k) @ 1``?"""
    if k < 1:
        raise InvalidParams("k must be >= 1")
    A = haar_tilde(k)
    n = A.cols
    reference = Counter(A.matvec([1] * n))
    if mode == "exhaustive":
        cap = config.current().exhaustive_cols if max_cols is None else max_cols
        if n > cap:
            raise SearchSpaceTooLarge(f"2^{n} colorings exceeds the exhaustive cap 2^{cap}")
        source = _colorings(n)
    elif mode == "sampled":
        rng = np.random.Generator(np.random.Philox(key=seed))
        source = (tuple(int(v) for v in rng.choice((-1, 1), size=n)) for _ in range(trials))
    else:
        raise InvalidParams(f"unknown mode {mode!r}")
    return all(Counter(A.matvec(x)) == reference for x in source)


def pm_sos_check(k: int) -> dict:
    """``disc(haar_pm(k)) >= disc(haar(k)) / 2`` by exhaustive search."""
    disc_pm = disc_exact(haar_pm(k), "inf").value
    half = Fraction(disc_exact(haar(k), "inf").value, 2)
    return {"disc_pm": disc_pm, "half_disc": half, "holds": disc_pm >= half}
