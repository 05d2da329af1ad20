"""Deterministic report serialization and the sweep PRNG.

JSON is the audit record: floats are written with 17 significant digits and
keys are sorted, so identical runs produce byte-identical files.  CSV is for
plotting and carries 9 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import ConfigError

__all__ = [
    "dump_canonical",
    "format_csv_value",
    "write_csv",
    "XorShift64Star",
    "SuiteConfig",
]


def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _encode(obj: Any, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, str):
        parts.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(_format_float(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                parts.append(",")
            _encode(str(key), parts)
            parts.append(":")
            _encode(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)):
        parts.append("[")
        for i, item in enumerate(obj):
            if i:
                parts.append(",")
            _encode(item, parts)
        parts.append("]")
    else:
        try:
            import numpy as np

            if isinstance(obj, np.generic):
                _encode(obj.item(), parts)
                return
            if isinstance(obj, np.ndarray):
                _encode(obj.tolist(), parts)
                return
        except ImportError:  # pragma: no cover
            pass
        raise TypeError(f"cannot serialize {type(obj)!r}")


def dump_canonical(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed float format, no whitespace."""
    parts: list[str] = []
    _encode(obj, parts)
    parts.append("\n")
    return "".join(parts)


def format_csv_value(x: Any) -> str:
    if isinstance(x, float):
        return format(x, ".9g")
    return str(x)


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_csv_value(v) for v in row) + "\n")


class XorShift64Star:
    """Tiny deterministic PRNG for sweep placement; the seed goes in the
    report so any run is reproducible bit for bit across platforms."""

    _MASK = (1 << 64) - 1
    _MULT = 0x2545F4914F6CDD1D

    def __init__(self, seed: int) -> None:
        self.state = (int(seed) & self._MASK) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= (x >> 12) & self._MASK
        x = (x << 25) & self._MASK
        x ^= x >> 27
        self.state = x
        return (x * self._MULT) & self._MASK

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        u = self.next_u64() >> 11  # 53 bits
        return lo + (hi - lo) * (u / float(1 << 53))


@dataclass
class SuiteConfig:
    """Configuration of one verification suite run."""

    suite: str
    lambdas: tuple[float, ...] = (0.3, 1.0, 2.0)
    p_values: tuple[float, ...] = (0.5, 1.0, 2.0, 4.0)
    q_values: tuple[float, ...] = (0.3, 0.5, 0.8)
    tau: float = 0.9
    family: tuple[str, ...] = ("indicator", "tent", "bump", "near_axis")
    resolutions: tuple[int, ...] = (64, 128)
    n_balls: int = 40
    seed: int = 20240803
    output_dir: str = "reports"
    jobs: int = 1

    KNOWN_SUITES = (
        "moser",
        "caccioppoli",
        "sobolev",
        "l2moser",
        "iteration",
        "polar",
        "domination",
        "normequiv",
        "oracle",
    )

    def validate(self) -> None:
        if self.suite not in self.KNOWN_SUITES:
            raise ConfigError(
                f"unknown suite {self.suite!r}; choose from {', '.join(self.KNOWN_SUITES)}"
            )
        for name in ("lambdas", "p_values", "q_values", "family", "resolutions"):
            if len(getattr(self, name)) == 0:
                raise ConfigError(f"config list {name!r} must be nonempty")
        if any(l <= 0 for l in self.lambdas):
            raise ConfigError("all lambda values must be positive")
        if any(p <= 0 for p in self.p_values):
            raise ConfigError("all p values must be positive")
        if any(not (0.0 < q < 1.0) for q in self.q_values):
            raise ConfigError("all q values must lie in (0, 1)")
        if not (0.0 < self.tau < 1.0):
            raise ConfigError(f"tau must lie in (0, 1), got {self.tau}")
        res = self.resolutions
        if any(b <= a for a, b in zip(res, res[1:])):
            raise ConfigError(f"resolutions must be strictly ascending, got {res}")
        if any(r < 8 for r in res):
            raise ConfigError("resolutions below 8 are not meaningful")
        if self.n_balls < 1:
            raise ConfigError("n_balls must be >= 1")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "lambdas": list(self.lambdas),
            "p_values": list(self.p_values),
            "q_values": list(self.q_values),
            "tau": self.tau,
            "family": list(self.family),
            "resolutions": list(self.resolutions),
            "n_balls": self.n_balls,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "jobs": self.jobs,
        }
