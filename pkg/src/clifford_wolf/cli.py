"""``cliffwolf`` command line: list, check, curvature, displacement, homogeneity.

Exit codes: 0 when every report passes, 1 when any fails or is
inconclusive, 2 on configuration errors (raised before any computation).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields

from . import catalog as cat
from .report import _clean, render
from .suites import SUITES, ConfigError, RunConfig, run_suite


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffwolf", description="Constant-displacement checks on homogeneous spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--entry", type=int, action="append", help="catalog row (repeatable)")
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--budget", type=int, help="local optimizer evaluations per start")
    common.add_argument("--tol", type=float)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "markdown"))
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--workers", type=int)
    common.add_argument("--timing", action="store_true", help="include runtime_ms (breaks byte-identical output)")

    sub.add_parser("list", parents=[common], help="list catalog rows")
    c = sub.add_parser("check", parents=[common], help="run named suites")
    c.add_argument("--suite", action="append", help=f"one of {', '.join(sorted(SUITES))}")
    sub.add_parser("curvature", parents=[common], help="sectional curvature sampling")
    d = sub.add_parser("displacement", parents=[common], help="constant-displacement test of one isometry")
    d.add_argument("--isometry", required=True,
                   help='JSON literal or named generator, e.g. "vincent(theta=2pi/5, blocks=2)"')
    sub.add_parser("homogeneity", parents=[common], help="homogeneity verdicts for demo deck groups")
    return p


def _config(args) -> RunConfig:
    base = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        if not isinstance(base, dict):
            raise ConfigError("config must be a JSON object")
    cfg = RunConfig.from_dict(base)
    if args.entry:
        cfg.entries = list(args.entry)
    for f in ("seed", "samples", "budget", "tol", "out", "format", "n", "m", "k", "l", "workers"):
        v = getattr(args, f, None)
        if v is not None:
            setattr(cfg, f, v)
    if args.timing:
        cfg.timing = True
    cmd = args.command
    if cmd == "check" and args.suite:
        cfg.suites = list(args.suite)
    elif cmd in ("curvature", "homogeneity", "displacement"):
        cfg.suites = [cmd]
    if cmd == "displacement":
        iso = args.isometry
        try:
            cfg.isometry = json.loads(iso)
        except json.JSONDecodeError:
            cfg.isometry = {"inner": iso}
    return cfg


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = _config(args)
        if args.command == "list":
            rows = cat.list_entries()
            if cfg.entries:
                rows = [r for r in rows if r["row"] in cfg.entries]
            _emit(json.dumps(_clean(rows), indent=2) + "\n", cfg.out)
            return 0
        reports = run_suite(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    _emit(render(reports, cfg.format, timing=cfg.timing), cfg.out)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
