"""Collect acceptance outcomes and print one line per criterion at the end of the run."""
from collections import defaultdict

import pytest

TITLES = {
    1: "Vincent translations on S^3 and S^5",
    2: "easy half on demo deck groups",
    3: "sphere and P^2(C) curvature",
    4: "Berger space SO(5)/SO(3)",
    5: "entry 12 certificates",
    6: "entry 6 certificates",
    7: "fibration suite",
    8: "homogeneity verdicts",
    9: "metric kernel",
    10: "Clifford modules",
    11: "determinism",
}

_results = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        ok = rep.outcome == "passed" and not hasattr(rep, "wasxfail")
        _results[mark.args[0]].append((item.name, ok, rep.duration, getattr(rep, "wasxfail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(TITLES):
        rows = _results.get(n)
        if not rows:
            tr.write_line(f"criterion {n:2d} NOT RUN  {TITLES[n]}")
            continue
        ok = all(r[1] for r in rows)
        secs = sum(r[2] for r in rows)
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {TITLES[n]} ({secs:.1f} s)"
        failed = [r[0] for r in rows if not r[1]]
        if failed:
            line += f"; not passing: {', '.join(failed)}"
        tr.write_line(line)
