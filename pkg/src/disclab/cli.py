"""``disclab <construct|solve|verify|experiment> [flags]``.

Matrices travel as headerless integer CSV.  ``solve`` prints a JSON envelope
on stdout; diagnostics go to stderr.  Exit codes: 0 success, 1 a reported
check failed, 2 bad input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

from . import __version__, config
from .constructions import (
    build_gap_instance,
    build_kron_instance,
    hadamard01,
    haar,
    haar_neg,
    haar_pm,
    haar_pos,
    haar_tilde,
    power_matrix,
)
from .detlb import detlb_exact, is_tum, lsv_check
from .disc import disc_exact, herdisc_exact
from .errors import InputError, InvalidParams, ResourceLimit
from .exact import IntMatrix, format_csv, parse_csv
from .suite import paper_claims, random_binary_matrices, render_json, render_table
from .vcdim import random_coloring_stats, vc_dimension
from .vollb import vollb_estimate

ENVELOPE_SCHEMA = {
    "type": "object",
    "required": ["command", "params", "result", "seed", "tool_version", "wall_time_ms"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "params": {"type": "object"},
        "result": {"type": "object"},
        "seed": {"type": ["integer", "null"]},
        "tool_version": {"type": "string"},
        "wall_time_ms": {"type": "number", "minimum": 0},
        "partial": {"type": "boolean"},
    },
}

FAMILIES = ("haar", "haar-tilde", "haar-pos", "haar-neg", "haar-pm",
            "power", "hadamard01", "kron", "gap")
SOLVE_KINDS = ("disc", "herdisc", "detlb", "tum", "vcdim", "vollb")

RATIO_SCAN_MAX_M, RATIO_SCAN_MAX_N = 12, 8


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidParams(f"family {args.family} needs {', '.join(missing)}")


def _read_matrix(path: str) -> IntMatrix:
    if path == "-":
        return parse_csv(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_csv(fh.read())


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _params(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "command")}


def _envelope(command: str, args, result: dict, start: float, partial: bool = False) -> str:
    env = {"command": command, "params": _params(args), "result": result,
           "seed": getattr(args, "seed", None), "tool_version": __version__,
           "wall_time_ms": round((time.perf_counter() - start) * 1000, 3)}
    if partial:
        env["partial"] = True
    return json.dumps(env, sort_keys=True) + "\n"


# construct

def _construct_matrix(args):
    fam = args.family
    if fam in ("haar", "haar-tilde", "haar-pos", "haar-neg", "haar-pm"):
        _need(args, "k")
        build = {"haar": haar, "haar-tilde": haar_tilde, "haar-pos": haar_pos,
                 "haar-neg": haar_neg, "haar-pm": haar_pm}[fam]
        return build(args.k), None
    if fam == "power":
        _need(args, "N")
        return power_matrix(args.N), None
    if fam == "hadamard01":
        _need(args, "n")
        return hadamard01(args.n), None
    if fam == "kron":
        _need(args, "N", "k")
        return build_kron_instance(args.N, args.k, args.base.replace("-", "_")), None
    _need(args, "m", "n", "eps")
    inst = build_gap_instance(args.m, args.n, args.eps)
    return inst.matrix, inst


def cmd_construct(args) -> int:
    A, inst = _construct_matrix(args)
    _write_text(args.out, format_csv(A))
    if inst is not None:
        sidecar = inst.to_json() + "\n"
        if args.sidecar:
            _write_text(args.sidecar, sidecar)
        elif args.out != "-":
            _write_text(args.out + ".json", sidecar)
        else:
            sys.stderr.write(sidecar)
    return 0


# solve

def _solve_result(args, A: IntMatrix) -> dict:
    kind = args.kind
    if kind == "disc":
        norm = args.norm
        if norm not in ("inf", "one"):
            try:
                norm = float(norm)
            except ValueError:
                raise InvalidParams(f"unknown norm {args.norm!r}") from None
        return disc_exact(A, norm, args.method).to_json_dict()
    if kind == "herdisc":
        return herdisc_exact(A).to_json_dict()
    if kind == "detlb":
        return detlb_exact(A, args.max_k, args.budget).to_json_dict()
    if kind == "tum":
        return is_tum(A, args.budget).to_json_dict()
    if kind == "vcdim":
        return vc_dimension(A).to_json_dict()
    if args.seed is None:
        raise InvalidParams("solve vollb needs --seed")
    return vollb_estimate(A, args.max_k or 3, args.samples, args.seed, args.budget).to_json_dict()


def cmd_solve(args) -> int:
    start = time.perf_counter()
    A = _read_matrix(args.input)
    try:
        result = _solve_result(args, A)
    except ResourceLimit as exc:
        partial = exc.partial
        if partial is not None and hasattr(partial, "to_json_dict"):
            sys.stdout.write(_envelope("solve", args, partial.to_json_dict(), start, partial=True))
        raise
    sys.stdout.write(_envelope("solve", args, result, start))
    return 0


# verify

def cmd_verify(args) -> int:
    if not 1 <= args.max_k <= 3:
        raise InvalidParams("--max-k must be in 1..3")
    rows = paper_claims(args.max_k, args.seed)
    if args.format == "json":
        sys.stdout.write(render_json(rows, args.max_k, args.seed))
    else:
        sys.stdout.write(render_table(rows))
    return 1 if any(r.status == "FAIL" for r in rows) else 0


# experiment

def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _ratio_row(A: IntMatrix) -> list:
    check = lsv_check(A)
    herdisc, detlb = check["herdisc"], check["detlb"]
    ratio = herdisc / detlb if detlb > 0 else math.nan
    return [A.rows, A.cols, herdisc, detlb, ratio, ratio / math.sqrt(A.cols), check["holds"]]


def _map(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))  # order preserved


def cmd_experiment(args) -> int:
    if args.seed is None:
        raise InvalidParams("experiments need --seed")
    if args.name == "random-coloring":
        if args.input is None:
            raise InvalidParams("random-coloring needs --input")
        A = _read_matrix(args.input)
        s = random_coloring_stats(A, args.trials, args.seed)
        row = [A.rows, A.cols, s.d, s.mean, s.max, s.stddev]
        _write_text(args.out, _csv_text(["m", "n", "d", "mean", "max", "stddev"],
                                        [[_fmt(v) for v in row]]))
        return 0
    if not (1 <= args.m <= RATIO_SCAN_MAX_M and 1 <= args.n <= RATIO_SCAN_MAX_N):
        raise InvalidParams(f"ratio-scan needs m <= {RATIO_SCAN_MAX_M} and n <= {RATIO_SCAN_MAX_N}")
    if args.count < 1:
        raise InvalidParams("--count must be >= 1")
    mats = list(random_binary_matrices(args.count, args.m, args.n, args.seed, fixed_shape=True))
    rows = _map(_ratio_row, mats, args.threads)
    header = ["m", "n", "herdisc", "detlb", "ratio", "ratio_over_sqrt_n", "lsv_holds"]
    _write_text(args.out, _csv_text(header, [[_fmt(v) for v in r] for r in rows]))
    finite = [r[5] for r in rows if not math.isnan(r[5])]
    if finite:
        print(f"max ratio_over_sqrt_n = {max(finite)!r}", file=sys.stderr)
    failures = sum(1 for r in rows if not r[6])
    if failures:
        print(f"detlb <= 2 herdisc failed on {failures} instance(s)", file=sys.stderr)
        return 1
    return 0


def _add_threads(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None,
                   help="cap on worker processes (default: config value)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="disclab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"disclab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a matrix family as CSV")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--k", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--base", choices=("haar", "haar-pm"), default="haar")
    p.add_argument("--out", default="-")
    p.add_argument("--sidecar", help="gap only: JSON path (default <out>.json)")
    _add_threads(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="compute one quantity, JSON envelope on stdout")
    p.add_argument("kind", choices=SOLVE_KINDS)
    p.add_argument("--input", default="-", help="matrix CSV path or - for stdin")
    p.add_argument("--norm", default="inf", help="inf, one, or a real p >= 1")
    p.add_argument("--method", choices=("exhaustive", "bnb"), default="exhaustive")
    p.add_argument("--max-k", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int)
    _add_threads(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="recheck the bundled claims on small instances")
    p.add_argument("--suite", choices=("paper-claims",), default="paper-claims")
    p.add_argument("--max-k", type=int, default=2)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=("table", "json"), default="table")
    _add_threads(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", help="seeded experiments, CSV report with header")
    p.add_argument("name", choices=("random-coloring", "ratio-scan"))
    p.add_argument("--input")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", default="-")
    _add_threads(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        limits = config.load_from_env()
        if args.threads is not None:
            if args.threads < 1:
                raise InvalidParams("--threads must be >= 1")
            limits = dataclasses.replace(limits, threads=args.threads)
        args.threads = limits.threads
        config.set_limits(limits)
        return args.func(args)
    except InputError as exc:
        print(f"disclab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"disclab: error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimit as exc:
        print(f"disclab: limit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
