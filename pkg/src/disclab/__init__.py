"""Exact discrepancy toolkit for small integer matrices."""

from .constructions import (
    build_gap_instance,
    hadamard01,
    haar,
    haar_neg,
    haar_pm,
    haar_pos,
    haar_tilde,
    haar_tree,
    power_matrix,
)
from .detlb import detlb_exact, hadamard_detlb_certificate, is_tum, lsv_check
from .disc import disc_exact, herdisc_exact
from .errors import DisclabError, InputError, ResourceLimit
from .exact import IntMatrix, SubmatrixIndex, det_exact, kronecker, parse_csv, format_csv
from .vcdim import random_coloring_stats, vc_dimension
from .vecdisc import VectorAssignment, greedy_heavy_path
from .vollb import estimate_volume, vollb_estimate

__version__ = "0.1.0"

__all__ = [
    "DisclabError", "InputError", "IntMatrix", "ResourceLimit", "SubmatrixIndex",
    "VectorAssignment", "build_gap_instance", "det_exact", "detlb_exact", "disc_exact",
    "estimate_volume", "format_csv", "greedy_heavy_path", "hadamard01", "hadamard_detlb_certificate",
    "haar", "haar_neg", "haar_pm", "haar_pos", "haar_tilde", "haar_tree", "herdisc_exact",
    "is_tum", "kronecker", "lsv_check", "parse_csv", "power_matrix", "random_coloring_stats",
    "vc_dimension", "vollb_estimate",
]
