"""Named verification suites and the run configuration that drives them."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import catalog as cat
from .displacement import (
    KILLING_PROVENANCE, KILLING_THRESHOLD_10, CosetPoint, Isometry, centralizer_transitive,
    constant_displacement_test, displacement, easy_half_check, entry6_certificates,
    entry12_certificates, fixed_point, homogeneity_verdict, min_killing_spread, parse_isometry,
)
from .lie_core import _rng, centralizer_algebra
from .report import CheckReport, FAIL, PASS


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    entries: list = field(default_factory=list)
    suites: list = field(default_factory=list)
    seed: int = 0
    samples: Optional[int] = None
    budget: Optional[int] = None
    tol: Optional[float] = None
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    l: Optional[int] = None
    isometry: Optional[dict] = None
    out: Optional[str] = None
    format: str = "json"
    workers: int = 1
    timing: bool = False

    def params_for(self, row: int) -> dict:
        names = cat.ROWS[row][1]
        return {k: getattr(self, k) for k in names if getattr(self, k) is not None}

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        bad = set(d) - known
        if bad:
            raise ConfigError(f"unknown config keys {sorted(bad)}")
        return cls(**d)


@dataclass(frozen=True)
class Suite:
    name: str
    citation: str
    default_entries: tuple
    run: Callable  # (row, config) -> list[CheckReport]
    needs_entry: bool = True


def _pick(v, default):
    return default if v is None else v


# -- suite bodies ---------------------------------------------------------------


def _vincent(row: int, cfg: RunConfig) -> list[CheckReport]:
    n = _pick(cfg.n, 5)
    if n % 2 == 0:
        raise ConfigError("vincent suite needs an odd sphere (entry 1 with odd --n)")
    blocks = (n + 1) // 2
    out = []
    for label, theta in (("2pi/5", 2 * np.pi / 5), ("pi/3", np.pi / 3)):
        rep = CheckReport("vincent", "vincent-clifford", seed=cfg.seed, samples=_pick(cfg.samples, 30))
        gam = cat.vincent_generator(theta, blocks)
        res = constant_displacement_test(gam, rep.samples, _pick(cfg.budget, 40), cfg.seed)
        rep.metrics.update({"sphere": f"S^{n}", "theta": label, **res.metrics()})
        rep.check("spread_check", res.spread, _pick(cfg.tol, 1e-6))
        rep.check("delta_hat_error", abs(res.delta_hat - theta), 1e-6)
        # independent oracle: arccos of the inner product of unit vectors
        e0 = np.eye(n + 1)[0]
        orc = 0.0
        for i in range(10):
            x = gam.space.random_point(cfg.seed, 500 + i)
            v, w = x.rep @ e0, gam.apply(x).rep @ e0
            orc = max(orc, abs(np.arccos(np.clip(v @ w, -1, 1)) - displacement(gam, x)))
        rep.check("arccos_oracle_error", orc, 1e-8)
        tr = centralizer_transitive(cat.DeckGroup([gam]), seed=cfg.seed)
        rep.metrics.update({"centralizer_dim": tr["centralizer_dim"], "transitive": tr["transitive"]})
        rep.require("centralizer_dim_is_blocks_squared", tr["centralizer_dim"] == blocks ** 2)
        rep.require("centralizer_transitive", tr["transitive"])
        rep.metrics["evidence"] = "numerical"
        out.append(rep)
    return out


def _rank(row: int, cfg: RunConfig) -> list[CheckReport]:
    e = cat.build_entry(row, **cfg.params_for(row))
    rep = e.space.rank_conditions(cfg.seed)
    rep.metrics["entry"] = row
    if row in (6, 7, 8, 9):
        rep.require("rank_H_eq_rank_G_required", rep.metrics["rank_H_eq_rank_G"])
    if e.has_fibration:
        rep.require("rank_K_eq_rank_G_required", rep.metrics["rank_K_eq_rank_G"])
    return [rep]


def _fibration(row: int, cfg: RunConfig) -> list[CheckReport]:
    e = cat.build_entry(row, **cfg.params_for(row))
    if not e.has_fibration:
        raise ConfigError(f"entry {row} has no fibration")
    rep = e.space.fibration_conditions(_pick(cfg.tol, 1e-10))
    rep.metrics["entry"] = e.row
    rep.metrics["fibration"] = e.fibration_label
    return [rep]


def _tg_fiber(row: int, cfg: RunConfig) -> list[CheckReport]:
    e = cat.build_entry(row, **cfg.params_for(row))
    if not e.has_fibration:
        raise ConfigError(f"entry {row} has no fibration")
    rep = e.space.totally_geodesic_fiber_check(_pick(cfg.samples, 100), cfg.seed, _pick(cfg.tol, 1e-10))
    rep.metrics["entry"] = e.row
    return [rep]


def _positive_planes(space, count: int, seed: int) -> np.ndarray:
    rng = _rng(seed, 101)
    return np.array([space.sectional_curvature(space.base_point(), rng.standard_normal(space.dim),
                                               rng.standard_normal(space.dim)) for _ in range(count)])


def _entry10(row: int, cfg: RunConfig) -> list[CheckReport]:
    if row != 10:
        raise ConfigError("entry10-killing runs on entry 10 only")
    sp = cat.build_entry(10).space
    rep = CheckReport("entry10-killing", "entry-10", seed=cfg.seed, samples=_pick(cfg.samples, 1000))
    K = _positive_planes(sp, 200, cfg.seed)
    rep.metrics["curvature_min"] = float(K.min())
    rep.check("curvature_min_positive", float(K.min()), 0.0, below=False)
    iso = cat.isotropy_weight_check(cfg.seed)
    rep.metrics["isotropy"] = {k: v for k, v in iso.metrics.items() if not k.endswith("_limit")}
    rep.require("isotropy_irreducible_spin3", iso.passed)
    res = min_killing_spread(sp, restarts=50, samples=rep.samples, seed=cfg.seed, budget=_pick(cfg.budget, 20))
    rep.metrics["min_normalized_spread"] = res["spread"]
    rep.metrics["descent_sample_spread"] = res["descent_spread"]
    rep.metrics["minimizer_norm"] = float(np.linalg.norm(res["xi"]))
    rep.metrics["threshold_provenance"] = dict(KILLING_PROVENANCE)
    rep.check("min_normalized_spread_check", res["spread"], KILLING_THRESHOLD_10, below=False)
    rep.metrics["evidence"] = "numerical"
    return [rep]


def _entry12(row: int, cfg: RunConfig) -> list[CheckReport]:
    if row != 12:
        raise ConfigError("entry12-cert runs on entry 12 only")
    return [entry12_certificates()]


def _entry6(row: int, cfg: RunConfig) -> list[CheckReport]:
    if row != 6 or _pick(cfg.m, 1) != 1:
        raise ConfigError("entry6-cert runs on entry 6 with m = 1")
    return [entry6_certificates(cfg.seed)]


def _curvature(row: int, cfg: RunConfig) -> list[CheckReport]:
    e = cat.build_entry(row, **cfg.params_for(row))
    sp = e.space
    count = _pick(cfg.samples, 1000)
    rep = CheckReport("curvature", "curvature-sampling", seed=cfg.seed, samples=count)
    K = _positive_planes(sp, count, cfg.seed)
    c = sp.metric.c
    rep.metrics.update({"entry": e.row, "space": e.label, "min": float(K.min()), "max": float(K.max()),
                        "mean": float(K.mean()), "calibration_c": e.calibration_c})
    if row == 1:
        rep.check("max_abs_deviation_from_1", float(np.abs(K - 1.0).max()), _pick(cfg.tol, 1e-8))
    elif row == 2:
        rep.check("min_rel_error_to_c", abs(K.min() - 1.0 / c) / (1.0 / c), 0.01)
        rep.check("max_rel_error_to_4c", abs(K.max() - 4.0 / c) / (4.0 / c), 0.01)
        rep.check("range_violation", max(0.0, 1.0 / c - K.min(), K.max() - 4.0 / c), 1e-9)
    else:
        rep.check("min_nonnegative", float(K.min()), -1e-9, below=False)
    return [rep]


def _homogeneity(row: int, cfg: RunConfig) -> list[CheckReport]:
    demos = cat.demo_deck_groups()
    if row == 1:
        names = [k for k in demos if k.startswith(("vincent", "lens"))]
    elif row == 6:
        names = ["entry6-Jnu"]
    else:
        raise ConfigError("homogeneity demos exist for entries 1 and 6")
    return [homogeneity_verdict(demos[k], _pick(cfg.samples, 20), _pick(cfg.budget, 30), cfg.seed) for k in names]


def _easy_half(row: int, cfg: RunConfig) -> list[CheckReport]:
    demos = cat.demo_deck_groups()
    names = ["vincent-S3-k5", "vincent-S5-k5", "entry6-Jnu"] if row == 0 else (
        ["entry6-Jnu"] if row == 6 else ["vincent-S3-k5", "vincent-S5-k5"])
    return [easy_half_check(demos[k], _pick(cfg.samples, 50), cfg.seed) for k in names]


def _clifford(row: int, cfg: RunConfig) -> list[CheckReport]:
    from .clifford_octonion import clifford_generators, g2_derivations, leibniz_residual, transitive_sphere_check
    from .lie_core import parse_group_spec
    rep = CheckReport("clifford", "clifford-modules", seed=cfg.seed)
    D = g2_derivations()
    rep.metrics["g2_dim"] = len(D)
    rep.require("g2_dim_14", len(D) == 14)
    rep.check("leibniz_residual", max(leibniz_residual(d) for d in D), 1e-10)
    for n, d in ((7, 8), (9, 16)):
        tr, od = transitive_sphere_check(parse_group_spec(f"Spin({n})").basis, np.eye(d)[0], seed=cfg.seed)
        rep.metrics[f"spin{n}_orbit_dim"] = od
        rep.require(f"spin{n}_transitive", tr and od == d - 1)
    rel = max(clifford_generators(n).relation_residual() for n in range(3, 10))
    rep.metrics["clifford_relation_residual"] = rel
    rep.require("clifford_relations_exact", rel == 0.0)
    return [rep]


def _displacement(row: int, cfg: RunConfig) -> list[CheckReport]:
    e = cat.build_entry(row, **cfg.params_for(row))
    if cfg.isometry is None:
        raise ConfigError("displacement needs an isometry literal")
    try:
        gam = parse_isometry(e.space, cfg.isometry)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rep = CheckReport("displacement", "constant-displacement", seed=cfg.seed, samples=_pick(cfg.samples, 30))
    res = constant_displacement_test(gam, rep.samples, _pick(cfg.budget, 40), cfg.seed)
    fp = fixed_point(gam, seed=cfg.seed)
    rep.metrics.update({"entry": e.row, **res.metrics(), "fixed_point_found": fp.found,
                        "displacement_floor": fp.floor, "evidence": "numerical"})
    if res.verdict == "inconclusive":
        rep.status = "inconclusive"
    return [rep]


SUITES: dict[str, Suite] = {s.name: s for s in (
    Suite("vincent", "vincent-clifford", (1,), _vincent),
    Suite("rank", "rank-equality", tuple(r for r in cat.ROWS), _rank),
    Suite("fibration", "new-setup", cat.FIBRATION_ROWS, _fibration),
    Suite("new-setup", "new-setup", cat.FIBRATION_ROWS, _fibration),
    Suite("tg-fiber", "new-go-space", cat.FIBRATION_ROWS, _tg_fiber),
    Suite("entry10-killing", "entry-10", (10,), _entry10),
    Suite("entry12-cert", "entry-12", (12,), _entry12),
    Suite("entry6-cert", "entry-6", (6,), _entry6),
    Suite("curvature", "curvature-sampling", (1, 2, 10), _curvature),
    Suite("homogeneity", "homogeneity-conjecture", (1, 6), _homogeneity),
    Suite("easy-half", "easy-half", (0,), _easy_half, needs_entry=False),
    Suite("clifford", "clifford-modules", (0,), _clifford, needs_entry=False),
    Suite("displacement", "constant-displacement", (1,), _displacement),
)}
FULL_RUN = ("vincent", "rank", "fibration", "tg-fiber", "entry10-killing", "entry12-cert", "entry6-cert",
            "curvature", "homogeneity", "easy-half", "clifford")


def plan(cfg: RunConfig) -> list[tuple[str, int]]:
    """Validate the configuration and list the (suite, entry) jobs, before any computation."""
    names = cfg.suites or list(FULL_RUN)
    bad = [s for s in names if s not in SUITES]
    if bad:
        raise ConfigError(f"unknown suite(s) {bad}; known: {sorted(SUITES)}")
    for r in cfg.entries:
        if r in cat.UNSUPPORTED_ROWS:
            raise ConfigError(f"entry {r} is unsupported ({cat.UNSUPPORTED_ROWS[r]})")
        if r not in cat.ROWS:
            raise ConfigError(f"no catalog entry {r}")
    if cfg.format not in ("json", "markdown"):
        raise ConfigError(f"unknown format {cfg.format!r}")
    jobs = []
    for s in names:
        suite = SUITES[s]
        rows = list(cfg.entries) if (cfg.entries and suite.needs_entry) else list(suite.default_entries)
        for r in rows:
            if suite.needs_entry:
                try:
                    cat.build_entry(r, **cfg.params_for(r))
                except cat.UnsupportedEntry as exc:
                    raise ConfigError(str(exc)) from exc
                except (ValueError, TypeError) as exc:
                    raise ConfigError(f"entry {r}: {exc}") from exc
            jobs.append((s, r))
    return jobs


def _run_job(job, cfg: RunConfig) -> list[CheckReport]:
    name, row = job
    t0 = time.perf_counter()
    reports = SUITES[name].run(row, cfg)
    dt = (time.perf_counter() - t0) * 1000.0
    for r in reports:
        r.runtime_ms = dt / len(reports)
        if SUITES[name].needs_entry:
            r.metrics.setdefault("entry", row)
    return reports


def _run_job_star(args):
    return _run_job(*args)


def run_suite(cfg: RunConfig) -> list[CheckReport]:
    jobs = plan(cfg)
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            results = list(ex.map(_run_job_star, [(j, cfg) for j in jobs]))
    else:
        results = [_run_job(j, cfg) for j in jobs]
    return [r for rs in results for r in rs]
