"""Matrix families: Haar basis matrices, power-set matrices, 0/1 Hadamard
matrices, Kronecker instances and the padded gap instances.

Column layout of ``haar(k)`` follows the block recursion
``[[haar(k-1), I], [haar(k-1), -I]]``; the tree in :class:`HaarTree` uses the
same numbering, so column ``c`` of the matrix is tree node ``c``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import config
from .errors import InvalidParams, NotPowerOfTwo, OutOfRange, SizeLimit
from .exact import IntMatrix, format_rational, kronecker, pad_zeros, vstack

FAMILIES = ("haar", "haar_pm")


def _check_size(rows: int, cols: int, max_entries: Optional[int] = None) -> None:
    cap = config.current().max_entries if max_entries is None else max_entries
    if rows * cols > cap:
        raise SizeLimit(f"{rows}x{cols} matrix exceeds the cap of {cap} entries")


def _check_depth(k: int) -> None:
    if k < 0:
        raise InvalidParams(f"depth must be >= 0, got {k}")
    _check_size(2**k, 2**k)


def _haar_rows(k: int) -> list[list[int]]:
    rows = [[1]]
    for level in range(1, k + 1):
        half = 2 ** (level - 1)
        top, bottom = [], []
        for i, r in enumerate(rows):
            eye = [0] * half
            eye[i] = 1
            top.append(r + eye)
            bottom.append(r + [-v for v in eye])
        rows = top + bottom
    return rows


def haar(k: int) -> IntMatrix:
    """``2**k x 2**k`` discrete Haar basis matrix (columns are unnormalized wavelets)."""
    _check_depth(k)
    return IntMatrix.from_rows(_haar_rows(k))


def haar_tilde(k: int) -> IntMatrix:
    """``haar(k)`` without its all-ones first column."""
    if k < 1:
        raise InvalidParams("haar_tilde needs k >= 1 (k = 0 leaves no columns)")
    _check_depth(k)
    return IntMatrix.from_rows([r[1:] for r in _haar_rows(k)])


def haar_pos(k: int) -> IntMatrix:
    _check_depth(k)
    return IntMatrix.from_rows([[int(v > 0) for v in r] for r in _haar_rows(k)])


def haar_neg(k: int) -> IntMatrix:
    _check_depth(k)
    return IntMatrix.from_rows([[int(v < 0) for v in r] for r in _haar_rows(k)])


def haar_pm(k: int) -> IntMatrix:
    """Positive-part indicator stacked on top of the negative-part indicator."""
    _check_size(2 ** (k + 1), 2**k)
    return vstack(haar_pos(k), haar_neg(k))


@dataclass(frozen=True)
class Node:
    is_leaf: bool
    index: int  # column id for internal nodes, row id for leaves


@dataclass
class HaarTree:
    """Signed binary tree encoding ``haar(k)``.

    Internal node ids equal column indices; ``0`` is the extra root ``r``
    whose only child (left) is the root of the depth-``k`` perfect tree.
    Each root-to-leaf path is one row: going left through node ``c`` puts
    ``+1`` in column ``c``, going right puts ``-1``.
    """

    k: int
    children: dict[int, tuple[Node, Optional[Node]]] = field(default_factory=dict)
    root: int = 0

    @property
    def size(self) -> int:
        return 2**self.k

    def column_of(self, node: int) -> int:
        return node

    def paths(self) -> dict[int, list[tuple[int, int]]]:
        """Map each leaf row to its ``(column, sign)`` path from the root."""
        out = {}
        stack = [(self.root, [])]
        while stack:
            col, prefix = stack.pop()
            left, right = self.children[col]
            for child, sign in ((left, 1), (right, -1)):
                if child is None:
                    continue
                path = prefix + [(col, sign)]
                if child.is_leaf:
                    out[child.index] = path
                else:
                    stack.append((child.index, path))
        return out

    def path(self, row: int) -> list[tuple[int, int]]:
        return self.paths()[row]


def haar_tree(k: int) -> HaarTree:
    _check_depth(k)
    children: dict[int, tuple[Node, Optional[Node]]] = {0: (Node(True, 0), None)}
    # leaf_parent[row] = (column, side) where side 0 = left, 1 = right
    leaf_parent = {0: (0, 0)}
    for level in range(1, k + 1):
        half = 2 ** (level - 1)
        new_parent = {}
        for row in range(half):
            col = half + row
            parent, side = leaf_parent[row]
            pair = list(children[parent])
            pair[side] = Node(False, col)
            children[parent] = (pair[0], pair[1])
            children[col] = (Node(True, row), Node(True, row + half))
            new_parent[row] = (col, 0)
            new_parent[row + half] = (col, 1)
        leaf_parent = new_parent
    return HaarTree(k=k, children=children)


def matrix_from_tree(tree: HaarTree) -> IntMatrix:
    n = tree.size
    rows = [[0] * n for _ in range(n)]
    for row, path in tree.paths().items():
        for col, sign in path:
            rows[row][tree.column_of(col)] = sign
    return IntMatrix.from_rows(rows)


def power_matrix(N: int) -> IntMatrix:
    """``2**N x N`` matrix whose row ``i`` is the binary expansion of ``i`` (LSB in column 0)."""
    if N < 1:
        raise InvalidParams(f"power matrix needs N >= 1, got {N}")
    _check_size(2**N, N)
    return IntMatrix(2**N, N, ((i >> j) & 1 for i in range(2**N) for j in range(N)))


def sylvester_hadamard(n: int) -> IntMatrix:
    if n < 1 or n & (n - 1):
        raise NotPowerOfTwo(f"Sylvester construction needs a power of two, got {n}")
    _check_size(n, n)
    rows = [[1]]
    while len(rows) < n:
        rows = [r + r for r in rows] + [r + [-v for v in r] for r in rows]
    return IntMatrix.from_rows(rows)


def hadamard01(n: int) -> IntMatrix:
    """Sylvester Hadamard matrix mapped entrywise by ``a -> (a + 1) / 2``."""
    H = sylvester_hadamard(n)
    return IntMatrix(n, n, ((v + 1) // 2 for v in H.entries))


def disc1_closed(k: int) -> Fraction:
    """Closed form ``(k+1)/2**k * C(k, floor((k+1)/2))`` for the L1 discrepancy of ``haar(k)``."""
    if k < 0:
        raise InvalidParams(f"k must be >= 0, got {k}")
    return Fraction(k + 1, 2**k) * math.comb(k, (k + 1) // 2)


def binomial_abs_identity_check(k: int) -> dict:
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    lhs = sum(math.comb(k, l) * abs(k - 2 * l) for l in range(k + 1))
    rhs = 2 * k * math.comb(k - 1, k // 2)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


def family_matrix(k: int, family: str) -> IntMatrix:
    if family == "haar":
        return haar(k)
    if family == "haar_pm":
        return haar_pm(k)
    raise InvalidParams(f"unknown family {family!r}; expected one of {FAMILIES}")


def build_kron_instance(N: int, k: int, family: str = "haar") -> IntMatrix:
    if N < 1 or k < 0:
        raise InvalidParams(f"need N >= 1 and k >= 0, got N={N}, k={k}")
    base_rows = 2**k if family == "haar" else 2 ** (k + 1)
    _check_size(2**N * base_rows, N * 2**k)
    return kronecker(power_matrix(N), family_matrix(k, family))


def gap_certificate(N: int, k: int, family: str = "haar") -> dict:
    """Certified discrepancy lower bound and detlb upper bound for ``P_N (x) family(k)``.

    ``haar``:    disc >= N * disc1(k) / 2,  detlb <= 2 * sqrt(e N)
    ``haar_pm``: disc >= N * disc1(k) / 4,  detlb <= sqrt(e N) * sqrt(2 e)
    """
    if N < 1 or k < 0:
        raise InvalidParams(f"need N >= 1 and k >= 0, got N={N}, k={k}")
    amp = math.sqrt(math.e * N)
    if family == "haar":
        return {"disc_lower": N * disc1_closed(k) / 2, "detlb_upper": amp * 2.0}
    if family == "haar_pm":
        return {"disc_lower": N * disc1_closed(k) / 4,
                "detlb_upper": amp * math.sqrt(2 * math.e)}
    raise InvalidParams(f"unknown family {family!r}")


@dataclass
class GapInstance:
    matrix: IntMatrix
    branch: str  # "small-m" or "kron"
    N: Optional[int]
    k: int
    eps: float
    family: str
    disc_lower: Fraction
    detlb_upper: float
    degenerate: bool = False

    @property
    def m(self) -> int:
        return self.matrix.rows

    @property
    def n(self) -> int:
        return self.matrix.cols

    def to_json_dict(self) -> dict:
        return {
            "branch": self.branch,
            "N": self.N,
            "k": self.k,
            "eps": self.eps,
            "m": self.m,
            "n": self.n,
            "family": self.family,
            "disc_lower": format_rational(self.disc_lower),
            "detlb_upper": self.detlb_upper,
            "degenerate": self.degenerate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def gap_parameters(m: int, n: int, eps: float) -> dict:
    """Branch and (N, k) for an ``m x n`` gap instance without building it."""
    if n < 2:
        raise InvalidParams(f"need n >= 2, got {n}")
    if not 0 < eps < 1:
        raise InvalidParams(f"need 0 < eps < 1, got {eps}")
    if m < n:
        raise OutOfRange(f"need m >= n, got m={m}, n={n}")
    if m <= n * n:
        return {"branch": "small-m", "N": None, "k": n.bit_length() - 1}
    # the upper limit only constrains the kron range m > n^2
    if math.log2(m) > n ** (1 - eps):
        raise OutOfRange(f"m={m} exceeds 2^(n^(1-eps)) = 2^{n ** (1 - eps):.4g}")
    N = (m // n).bit_length() - 1
    k = max(0, math.floor(eps * math.log2(n)))
    # guard against float rounding at exact powers: the instance must fit
    while k > 0 and (N * 2**k > n or 2 ** (N + k + 1) > m):
        k -= 1
    return {"branch": "kron", "N": N, "k": k}


def build_gap_instance(m: int, n: int, eps: float) -> GapInstance:
    params = gap_parameters(m, n, eps)
    _check_size(m, n)
    k = params["k"]
    if params["branch"] == "small-m":
        matrix = pad_zeros(haar(k), m, n)
        # every coloring of haar(k) leaves some row at |k + 1|, and detlb(haar(k)) <= 2
        return GapInstance(matrix, "small-m", None, k, eps, "haar",
                           disc_lower=Fraction(k + 1), detlb_upper=2.0,
                           degenerate=k == 0)
    N = params["N"]
    core = build_kron_instance(N, k, "haar_pm")
    cert = gap_certificate(N, k, "haar_pm")
    return GapInstance(pad_zeros(core, m, n), "kron", N, k, eps, "haar_pm",
                       disc_lower=cert["disc_lower"], detlb_upper=cert["detlb_upper"],
                       degenerate=k == 0)
