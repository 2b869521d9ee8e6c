import json
import subprocess
import sys

import numpy as np
import pytest

from clifford_wolf.cli import main
from clifford_wolf.report import CheckReport, render
from clifford_wolf.suites import ConfigError, RunConfig, plan


def test_render_empty():
    assert render([]).strip() == "[]"


def test_render_is_stable_and_ordered():
    r = CheckReport("s", "c", metrics={"b": np.float64(1 / 3), "a": np.int64(2), "flag": np.bool_(True),
                                       "v": np.array([0.1, 0.2]), "bad": float("nan")}, seed=1)
    r.runtime_ms = 12.5
    text = render([r])
    assert text == render([r])
    d = json.loads(text)[0]
    assert list(d) == ["suite", "citation", "status", "metrics", "seed", "samples", "runtime_ms"]
    assert list(d["metrics"]) == sorted(d["metrics"])
    assert d["runtime_ms"] is None
    assert d["metrics"]["b"] == float(f"{1 / 3:.12g}")
    assert d["metrics"]["bad"] == "nan"
    assert json.loads(render([r], timing=True))[0]["runtime_ms"] == 12.5
    assert render([r], "markdown").startswith("| suite |")
    with pytest.raises(ValueError):
        render([r], "xml")


def test_check_and_require():
    r = CheckReport("s", "c")
    assert r.check("x", 0.5, 1.0) and r.passed
    assert not r.check("y", 0.5, 1.0, below=False)
    assert r.status == "fail" and r.metrics["y_limit"] == 1.0
    r2 = CheckReport("s", "c")
    r2.require("ok", False)
    assert not r2.passed


def test_list(capsys):
    assert main(["list"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 19 and rows[9]["dim"] == 7
    assert main(["list", "--entry", "10"]) == 0
    assert [r["row"] for r in json.loads(capsys.readouterr().out)] == [10]


def test_check_suite_pass(capsys):
    assert main(["check", "--suite", "entry12-cert"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out[0]["status"] == "pass" and out[0]["runtime_ms"] is None


def test_displacement_command(capsys):
    rc = main(["displacement", "--entry", "1", "--n", "3", "--isometry", "vincent(theta=2pi/5, blocks=2)",
               "--samples", "8", "--budget", "5"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out[0]["metrics"]["verdict"] == "constant"
    assert abs(out[0]["metrics"]["delta_hat"] - 2 * np.pi / 5) < 1e-6


@pytest.mark.parametrize("argv", [
    ["check", "--suite", "nope"],
    ["check", "--suite", "rank", "--entry", "4"],
    ["check", "--suite", "rank", "--entry", "99"],
    ["check", "--suite", "fibration", "--entry", "13", "--k", "1", "--l", "1"],
    ["displacement", "--entry", "1", "--isometry", "rotate(1)"],
    ["check", "--bogus-flag"],
    ["check", "--suite", "vincent", "--n", "4"],
])
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_failing_suite_exit_1(capsys):
    # the (1, 4) Aloff-Wallach fibration misses the symmetric-fiber bracket condition
    assert main(["check", "--suite", "fibration", "--entry", "13"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out[0]["status"] == "fail"


def test_config_file_and_out(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suites": ["rank"], "entries": [7], "seed": 3}))
    out = tmp_path / "out.json"
    assert main(["check", "--config", str(cfg), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep[0]["seed"] == 3 and rep[0]["metrics"]["entry"] == 7
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["check", "--config", str(bad)]) == 2
    assert main(["check", "--config", str(tmp_path / "missing.json")]) == 2


def test_plan_validates_before_computing():
    with pytest.raises(ConfigError):
        plan(RunConfig(suites=["rank"], entries=[9]))
    jobs = plan(RunConfig(suites=["rank", "clifford"], entries=[7]))
    assert jobs == [("rank", 7), ("clifford", 0)]


def test_workers_give_identical_output(capsys):
    args = ["check", "--suite", "rank", "--entry", "6", "--entry", "7", "--entry", "8"]
    main(args)
    a = capsys.readouterr().out
    main(args + ["--workers", "2"])
    assert capsys.readouterr().out == a


def test_console_module_entry():
    p = subprocess.run([sys.executable, "-m", "clifford_wolf.cli", "list", "--entry", "17"],
                       capture_output=True, text=True, timeout=120)
    assert p.returncode == 0 and json.loads(p.stdout)[0]["row"] == 17
