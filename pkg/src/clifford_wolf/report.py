"""Check reports and their deterministic JSON / Markdown rendering."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

FIELD_ORDER = ("suite", "citation", "status", "metrics", "seed", "samples", "runtime_ms")


@dataclass
class CheckReport:
    suite: str
    citation: str
    status: str = PASS
    metrics: dict = field(default_factory=dict)
    seed: int | None = None
    samples: int | None = None
    runtime_ms: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def check(self, name: str, value: float, limit: float, *, below: bool = True) -> bool:
        """Record a metric and fail the report when it misses ``limit``."""
        ok = value < limit if below else value > limit
        self.metrics[name] = value
        self.metrics[name + "_limit"] = limit
        if not ok and self.status != FAIL:
            self.status = FAIL
        return ok

    def require(self, name: str, ok: bool) -> bool:
        self.metrics[name] = bool(ok)
        if not ok:
            self.status = FAIL
        return bool(ok)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "suite": self.suite,
            "citation": self.citation,
            "status": self.status,
            "metrics": _clean(self.metrics),
            "seed": self.seed,
            "samples": self.samples,
            "runtime_ms": (round(self.runtime_ms, 3) if timing and self.runtime_ms is not None else None),
        }


def _clean(v: Any):
    if isinstance(v, dict):
        return {str(k): _clean(v[k]) for k in sorted(v, key=str)}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        x = float(v)
        if math.isnan(x) or math.isinf(x):
            return repr(x)
        # 12 significant digits: stable across BLAS thread counts
        return float(f"{x:.12g}")
    if isinstance(v, np.ndarray):
        return _clean(v.tolist())
    return v


def render(reports: Iterable[CheckReport], fmt: str = "json", timing: bool = False) -> str:
    reports = list(reports)
    if fmt == "json":
        return json.dumps([r.to_dict(timing) for r in reports], indent=2, sort_keys=False) + "\n"
    if fmt == "markdown":
        lines = ["| suite | status | citation | key metrics |", "|---|---|---|---|"]
        for r in reports:
            d = r.to_dict(timing)
            keys = [k for k in d["metrics"] if not k.endswith("_limit")][:6]
            summary = ", ".join(f"{k}={d['metrics'][k]}" for k in keys)
            lines.append(f"| {r.suite} | {r.status} | {r.citation} | {summary} |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
