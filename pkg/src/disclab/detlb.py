"""Determinant lower bound, total unimodularity and the related inequalities.

Submatrices are enumerated by ascending order ``k``; within one ``k`` the
incumbent is the lexicographically smallest ``(rows, cols)``.  Comparisons of
``|det|^(1/k)`` go through :func:`root_power_compare`, so no float ever
decides a maximum.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import config
from .constructions import hadamard01, power_matrix
from .disc import herdisc_exact
from .errors import BudgetExceeded, EntriesOutOfRange, InvalidParams, NoShatteredSet, NotBinary
from .exact import (
    IntMatrix,
    SubmatrixIndex,
    det_exact,
    det_rows,
    kronecker,
    root_power_compare,
    root_value,
    submatrix,
)


@dataclass
class DetLbCertificate:
    order: int
    index: SubmatrixIndex
    det: int
    partial: bool = False
    evaluated: int = 0

    @property
    def value_float(self) -> float:
        return root_value(self.det, self.order)

    def compare(self, other: "DetLbCertificate") -> int:
        return root_power_compare(self.det, self.order, other.det, other.order)

    def to_json_dict(self) -> dict:
        return {"k": self.order,
                "rows": list(self.index.row_ids),
                "cols": list(self.index.col_ids),
                "det": str(self.det),
                "value_float": self.value_float,
                "partial": self.partial}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def enumeration_size(m: int, n: int, max_k: Optional[int] = None) -> int:
    top = min(m, n) if max_k is None else min(max_k, m, n)
    return sum(math.comb(m, k) * math.comb(n, k) for k in range(1, top + 1))


def _square_minors(A: IntMatrix, max_k: int) -> Iterator[tuple[int, tuple, tuple, list]]:
    """Yield ``(k, cols, rows, projected_rows)`` for candidate nonsingular minors.

    Row subsets containing a zero row, or two rows equal up to sign, are
    singular and skipped.  Only the first of a +- duplicate pair is kept,
    which never hides a maximizer: swapping in the later copy gives the same
    ``|det|`` with a lexicographically larger row set.
    """
    rows = A.to_rows()
    for k in range(1, max_k + 1):
        for cols in itertools.combinations(range(A.cols), k):
            proj = [tuple(r[j] for j in cols) for r in rows]
            useful, seen = [], set()
            for i, p in enumerate(proj):
                if not any(p):
                    continue
                neg = tuple(-v for v in p)
                if p in seen or neg in seen:
                    continue
                seen.add(p)
                useful.append(i)
            for rsub in itertools.combinations(useful, k):
                yield k, cols, rsub, [proj[i] for i in rsub]


def detlb_exact(A: IntMatrix, max_k: Optional[int] = None,
                budget: Optional[int] = None) -> DetLbCertificate:
    """Exact ``max_k max_B |det B|^(1/k)`` over square submatrices.

    Raises :class:`BudgetExceeded` with the best certificate so far (marked
    ``partial``) once more than ``budget`` determinants have been evaluated.
    """
    budget = config.current().det_budget if budget is None else budget
    top = min(A.rows, A.cols) if max_k is None else min(max_k, A.rows, A.cols)
    if top < 1:
        raise InvalidParams("max_k must be >= 1")
    best = DetLbCertificate(1, SubmatrixIndex((0,), (0,)), 0)
    best_key = None
    count = 0
    for k, cols, rsub, block in _square_minors(A, top):
        if count >= budget:
            best.partial = True
            best.evaluated = count
            raise BudgetExceeded(
                f"determinant budget {budget} exhausted before finishing order {k}",
                partial=best)
        count += 1
        d = det_rows(block)
        if d == 0:
            continue
        c = root_power_compare(d, k, best.det, best.order)
        key = (k, rsub, cols)
        if c > 0 or (c == 0 and best_key is not None and key < best_key):
            best = DetLbCertificate(k, SubmatrixIndex(rsub, cols), d)
            best_key = key
    best.evaluated = count
    return best


@dataclass
class TumResult:
    tum: bool
    counterexample: Optional[SubmatrixIndex] = None
    det: Optional[int] = None
    evaluated: int = 0

    def to_json_dict(self) -> dict:
        out = {"tum": self.tum, "evaluated": self.evaluated, "counterexample": None}
        if self.counterexample is not None:
            out["counterexample"] = {"rows": list(self.counterexample.row_ids),
                                     "cols": list(self.counterexample.col_ids),
                                     "det": str(self.det)}
        return out


def is_tum(A: IntMatrix, budget: Optional[int] = None) -> TumResult:
    """Total unimodularity by enumeration, smallest violating minors first."""
    if any(v not in (-1, 0, 1) for v in A.entries):
        raise EntriesOutOfRange("TUM check needs entries in {-1, 0, 1}")
    budget = config.current().det_budget if budget is None else budget
    count = 0
    for k, cols, rsub, block in _square_minors(A, min(A.rows, A.cols)):
        if k == 1:
            continue  # entries already checked
        if count >= budget:
            raise BudgetExceeded(f"determinant budget {budget} exhausted at order {k}",
                                 partial=TumResult(True, evaluated=count))
        count += 1
        d = det_rows(block)
        if d not in (-1, 0, 1):
            return TumResult(False, SubmatrixIndex(rsub, cols), d, count)
    return TumResult(True, evaluated=count)


def stacked_detlb_bound(D: float, t: int) -> float:
    """``D * sqrt(e t)``: detlb of any row-union of ``t`` matrices with detlb at most ``D``."""
    if D < 0 or t < 1:
        raise InvalidParams(f"need D >= 0 and t >= 1, got D={D}, t={t}")
    return D * math.sqrt(math.e * t)


def verify_detlb_amplification(A: IntMatrix, N: int, budget: Optional[int] = None) -> dict:
    """Check ``detlb(P_N (x) A) <= sqrt(e N) * detlb(A)`` (float, 1e-9 slack)."""
    lhs = detlb_exact(kronecker(power_matrix(N), A), budget=budget).value_float
    rhs = math.sqrt(math.e * N) * detlb_exact(A, budget=budget).value_float
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + 1e-9}


def lsv_check(A: IntMatrix, budget: Optional[int] = None) -> dict:
    """``detlb(A) <= 2 herdisc(A)``, decided exactly."""
    cert = detlb_exact(A, budget=budget)
    herdisc = herdisc_exact(A).value
    holds = root_power_compare(cert.det, cert.order, 2 * herdisc, 1) <= 0
    return {"detlb": cert.value_float, "detlb_det": cert.det, "detlb_order": cert.order,
            "herdisc": herdisc, "holds": holds}


def _largest_power_of_two_at_most(d: int) -> int:
    return 1 << (d.bit_length() - 1)


@dataclass
class HadamardCertificate:
    d: int
    order: int  # largest power of two <= d
    bound: float
    witness: SubmatrixIndex
    det: int
    exact_root: float = field(default=0.0)

    def to_json_dict(self) -> dict:
        return {"d": self.d, "order": self.order, "bound": self.bound,
                "rows": list(self.witness.row_ids), "cols": list(self.witness.col_ids),
                "det": str(self.det), "exact_root": self.exact_root}


def hadamard_detlb_certificate(A: IntMatrix) -> HadamardCertificate:
    """Find a 0/1 Hadamard submatrix from a shattered column set.

    The reported ``bound`` is ``sqrt(d')/2``; ``exact_root`` is the true
    ``|det|^(1/d')`` of the located submatrix, which is slightly larger.
    """
    from .vcdim import vc_dimension

    if not A.is_binary():
        raise NotBinary("Hadamard certificate needs a 0/1 matrix")
    vc = vc_dimension(A)
    if vc.d < 1:
        raise NoShatteredSet("matrix shatters no column, so no Hadamard submatrix exists")
    order = _largest_power_of_two_at_most(vc.d)
    cols = vc.witness.cols[:order]
    # patterns on the chosen columns, read off rows that realize full patterns
    realize = {}
    for i in range(A.rows):
        key = tuple(A[i, c] for c in cols)
        realize.setdefault(key, i)
    H = hadamard01(order)
    rows = sorted(realize[H.row(r)] for r in range(order))
    witness = SubmatrixIndex(tuple(rows), tuple(cols))
    det = det_exact(submatrix(A, witness))
    expected = det_exact(H)
    if abs(det) != abs(expected):
        raise AssertionError("located submatrix is not a row permutation of the Hadamard matrix")
    return HadamardCertificate(vc.d, order, math.sqrt(order) / 2, witness, det,
                               root_value(det, order))
