"""Resource caps.

Defaults can be raised by a ``key=value`` file named by ``DISCLAB_CONFIG``;
CLI flags override the file.
"""

from __future__ import annotations

import contextlib
import dataclasses
import os
from dataclasses import dataclass

from .errors import InvalidParams


@dataclass(frozen=True)
class Limits:
    max_entries: int = 2**20
    exhaustive_cols: int = 24
    herdisc_cols: int = 16
    det_budget: int = 10**7
    vollb_subset_budget: int = 4096
    threads: int = 1


_active = Limits()


def current() -> Limits:
    return _active


def set_limits(limits: Limits) -> None:
    global _active
    _active = limits


@contextlib.contextmanager
def overridden(**changes):
    """Temporarily replace some caps (used by tests and the CLI)."""
    global _active
    saved = _active
    _active = dataclasses.replace(saved, **changes)
    try:
        yield _active
    finally:
        _active = saved


def parse_config(text: str, base: Limits | None = None) -> Limits:
    base = base or Limits()
    fields = {f.name: f for f in dataclasses.fields(Limits)}
    changes = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in fields:
            raise InvalidParams(f"config line {lineno}: unknown setting {raw.strip()!r}")
        try:
            number = int(value.strip().replace("_", ""))
        except ValueError:
            raise InvalidParams(f"config line {lineno}: {key} needs an integer") from None
        if number < 1:
            raise InvalidParams(f"config line {lineno}: {key} must be positive")
        changes[key] = number
    return dataclasses.replace(base, **changes)


def load_from_env() -> Limits:
    path = os.environ.get("DISCLAB_CONFIG")
    if not path:
        return Limits()
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
