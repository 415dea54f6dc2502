"""Greedy tree walk certifying large vector discrepancy for ``haar(k)``.

Columns are colored with unit vectors.  Starting from the root column, the
walk keeps a running signed sum and at each node picks the child whose sign
makes the inner product with the node's vector nonnegative, so the squared
norm grows by at least one per step.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .constructions import HaarTree
from .errors import DimensionMismatch, NonUnitVector
from .exact import IntMatrix

UNIT_TOL = 1e-9


@dataclass
class VectorAssignment:
    dim: int
    vectors: np.ndarray  # one row per column

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.vectors.ndim != 2 or self.vectors.shape[1] != self.dim:
            raise DimensionMismatch(
                f"expected an (n, {self.dim}) array of vectors, got shape {self.vectors.shape}")
        norms = np.linalg.norm(self.vectors, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_TOL)
        if bad.size:
            raise NonUnitVector(f"vector {int(bad[0])} has norm {norms[bad[0]]!r}")

    @classmethod
    def from_json(cls, text: str) -> "VectorAssignment":
        data = json.loads(text)
        return cls(int(data["dim"]), np.array(data["vectors"], dtype=np.float64))

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim, "vectors": self.vectors.tolist()})

    @classmethod
    def random(cls, n: int, dim: int, rng: np.random.Generator) -> "VectorAssignment":
        g = rng.standard_normal((n, dim))
        return cls(dim, g / np.linalg.norm(g, axis=1, keepdims=True))

    def __len__(self):
        return self.vectors.shape[0]


@dataclass
class PathCertificate:
    row_index: int
    accumulated: np.ndarray
    sq_norm: float
    partial_sq_norm: float  # before adding the last path column
    path: list[tuple[int, int]]

    def to_json_dict(self) -> dict:
        return {"row_index": self.row_index, "sq_norm": self.sq_norm,
                "partial_sq_norm": self.partial_sq_norm,
                "accumulated": self.accumulated.tolist(),
                "path": [list(p) for p in self.path]}


def greedy_heavy_path(tree: HaarTree, va: VectorAssignment) -> PathCertificate:
    if len(va) != tree.size:
        raise DimensionMismatch(f"{len(va)} vectors for {tree.size} columns")
    V = va.vectors
    node = tree.root
    acc = np.zeros(va.dim)
    path = []
    partial = 0.0
    while True:
        left, right = tree.children[node]
        v = V[tree.column_of(node)]
        # ties resolve left
        if right is None or float(acc @ v) >= 0.0:
            child, sign = left, 1
        else:
            child, sign = right, -1
        partial = float(acc @ acc)
        acc = acc + sign * v
        path.append((tree.column_of(node), sign))
        if child.is_leaf:
            return PathCertificate(child.index, acc, float(acc @ acc), partial, path)
        node = child.index


def vecdisc_row_norm(A: IntMatrix, va: VectorAssignment, row: int) -> float:
    """Euclidean norm of ``sum_i A[row, i] * v_i``."""
    if len(va) != A.cols:
        raise DimensionMismatch(f"{len(va)} vectors for {A.cols} columns")
    coeffs = np.array(A.row(row), dtype=np.float64)
    return float(math.sqrt(max(0.0, float(np.sum((coeffs @ va.vectors) ** 2)))))
