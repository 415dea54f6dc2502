"""The ``paper-claims`` verification suite behind ``disclab verify``.

Each claim is recomputed from scratch on small instances and reported as one
row.  Output is a pure function of ``(max_k, seed)``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .constructions import (
    binomial_abs_identity_check,
    disc1_closed,
    hadamard01,
    haar,
    haar_neg,
    haar_pm,
    haar_pos,
    haar_tree,
)
from .detlb import detlb_exact, is_tum, lsv_check, verify_detlb_amplification
from .disc import disc_exact, multiset_invariance_check, pm_sos_check, verify_disc_amplification
from .exact import IntMatrix, det_exact, format_rational
from .vecdisc import VectorAssignment, greedy_heavy_path

PASS, FAIL, INFO = "PASS", "FAIL", "INFO"

AMPLIFICATION_CASES = (("haar(1)", lambda: haar(1), 1),
                       ("haar(1)", lambda: haar(1), 2),
                       ("haar_pm(1)", lambda: haar_pm(1), 1))


@dataclass
class ClaimRow:
    claim: str
    statement: str
    lhs: str
    rhs: str
    status: str


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _join(values) -> str:
    return ";".join(values)


def _det_haar(ks):
    lhs = [abs(det_exact(haar(k))) for k in ks]
    rhs = [2 ** (2**k - 1) for k in ks]
    return ClaimRow("det-haar", "|det haar(k)| = 2^(2^k - 1)",
                    _join(map(str, lhs)), _join(map(str, rhs)), _status(lhs == rhs))


def _disc1_closed(ks):
    lhs = [disc_exact(haar(k), "one").value for k in ks]
    rhs = [disc1_closed(k) for k in ks]
    return ClaimRow("disc1-closed", "disc_1(haar(k)) = (k+1)/2^k C(k, floor((k+1)/2))",
                    _join(map(format_rational, lhs)), _join(map(format_rational, rhs)),
                    _status(lhs == rhs))


def _detlb_haar(ks):
    certs = [detlb_exact(haar(k)) for k in ks]
    ok = all(abs(c.det) <= 2**c.order for c in certs)
    return ClaimRow("detlb-haar-le-2", "detlb(haar(k)) <= 2",
                    _join(f"{c.value_float:.6f}" for c in certs), "2", _status(ok))


def _tum(ks):
    res = [(is_tum(haar_pos(k)).tum, is_tum(haar_neg(k)).tum) for k in ks]
    return ClaimRow("tum-pm", "haar_pos(k), haar_neg(k) totally unimodular",
                    _join(f"{int(a)}{int(b)}" for a, b in res), _join("11" for _ in ks),
                    _status(all(a and b for a, b in res)))


def _permute(ks):
    res = [multiset_invariance_check(k) for k in ks]
    return ClaimRow("permute", "multiset(haar_tilde(k) x) = multiset(haar_tilde(k) 1)",
                    _join(str(int(r)) for r in res), _join("1" for _ in ks), _status(all(res)))


def _identity():
    res = [binomial_abs_identity_check(k) for k in range(1, 21)]
    return ClaimRow("identity", "sum_l C(k,l)|k-2l| = 2k C(k-1, floor(k/2)), k <= 20",
                    str(sum(r["lhs"] for r in res)), str(sum(r["rhs"] for r in res)),
                    _status(all(r["equal"] for r in res)))


def _disc_amp():
    out = [verify_disc_amplification(make(), N) for _, make, N in AMPLIFICATION_CASES]
    return ClaimRow("disc-amp", "disc(P_N (x) A) >= N disc_1(A) / 2",
                    _join(format_rational(r["lhs"]) for r in out),
                    _join(format_rational(r["rhs"]) for r in out),
                    _status(all(r["holds"] for r in out)))


def _detlb_amp():
    out = [verify_detlb_amplification(make(), N) for _, make, N in AMPLIFICATION_CASES]
    return ClaimRow("detlb-amp", "detlb(P_N (x) A) <= sqrt(e N) detlb(A)",
                    _join(f"{r['lhs']:.6f}" for r in out),
                    _join(f"{r['rhs']:.6f}" for r in out),
                    _status(all(r["holds"] for r in out)))


def random_binary_matrices(count: int, max_m: int, max_n: int, seed: int,
                           fixed_shape: bool = False):
    """Seeded 0/1 matrices, shapes uniform in ``[1, max_m] x [1, max_n]`` unless fixed."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    for _ in range(count):
        if fixed_shape:
            m, n = max_m, max_n
        else:
            m = int(rng.integers(1, max_m + 1))
            n = int(rng.integers(1, max_n + 1))
        yield IntMatrix(m, n, (int(v) for v in rng.integers(0, 2, size=m * n)))


def _lsv(seed, count=50):
    checks = [lsv_check(A) for A in random_binary_matrices(count, 4, 4, seed)]
    worst = max(c["detlb"] / (2 * c["herdisc"]) for c in checks if c["herdisc"])
    return ClaimRow("lsv", f"detlb(A) <= 2 herdisc(A), {count} random 0/1 matrices",
                    f"max detlb/(2 herdisc) = {worst:.6f}", "1",
                    _status(all(c["holds"] for c in checks)))


def _sos(ks):
    res = [pm_sos_check(k) for k in ks]
    return ClaimRow("sos", "disc(haar_pm(k)) >= disc(haar(k)) / 2",
                    _join(str(r["disc_pm"]) for r in res),
                    _join(format_rational(r["half_disc"]) for r in res),
                    _status(all(r["holds"] for r in res)))


def _hadamard():
    sizes = (1, 2, 4, 8)
    dets = [abs(det_exact(hadamard01(n))) for n in sizes]
    # |det| >= 2^-n n^(n/2)  <=>  (2^n |det|)^2 >= n^n
    ok = all((2**n * d) ** 2 >= n**n for n, d in zip(sizes, dets))
    return ClaimRow("hadamard01-det", "|det hadamard01(n)| >= 2^-n n^(n/2), n in {1,2,4,8}",
                    _join(map(str, dets)),
                    _join(f"{n ** (n / 2) / 2**n:g}" for n in sizes), _status(ok))


def _vecdisc(ks, seed, trials=100, dim=8):
    worst = []
    for k in ks:
        tree = haar_tree(k)
        rng = np.random.Generator(np.random.Philox(key=(seed << 64) | k))
        worst.append(min(greedy_heavy_path(tree, VectorAssignment.random(2**k, dim, rng)).sq_norm
                         for _ in range(trials)))
    ok = all(w >= k + 1 - 1e-6 for w, k in zip(worst, ks))
    return ClaimRow("vecdisc-cert", "greedy tree walk reaches squared norm >= k+1",
                    _join(f"{w:.6f}" for w in worst), _join(str(k + 1) for k in ks), _status(ok))


def _disc_haar_value(ks):
    vals = [disc_exact(haar(k), "inf").value for k in ks]
    return ClaimRow("disc-haar-value", "disc(haar(k)): computed vs the stated value k",
                    _join(map(str, vals)), _join(str(k) for k in ks), INFO)


def paper_claims(max_k: int = 2, seed: int = 1) -> list[ClaimRow]:
    if not 1 <= max_k <= 3:
        raise ValueError("max_k must be in 1..3 for the exhaustive rows")
    ks = list(range(1, max_k + 1))
    return [
        _det_haar(ks),
        _disc1_closed(ks),
        _detlb_haar(ks),
        _tum(ks),
        _permute(ks),
        _identity(),
        _disc_amp(),
        _detlb_amp(),
        _lsv(seed),
        _sos(ks),
        _hadamard(),
        _vecdisc(ks, seed),
        _disc_haar_value(ks),
    ]


def render_table(rows: list[ClaimRow]) -> str:
    header = ClaimRow("claim", "statement", "computed", "reference", "status")
    cells = [[r.claim, r.status, r.lhs, r.rhs, r.statement] for r in [header, *rows]]
    widths = [max(len(c[i]) for c in cells) for i in range(4)]
    lines = []
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c[:4], widths)) + "  " + c[4])
    return "\n".join(line.rstrip() for line in lines) + "\n"


def render_json(rows: list[ClaimRow], max_k: int, seed: int) -> str:
    return json.dumps({"suite": "paper-claims", "max_k": max_k, "seed": seed,
                       "rows": [asdict(r) for r in rows]}, sort_keys=True, indent=2) + "\n"
