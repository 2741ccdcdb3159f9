"""Smoke tests for the python bindings: imports, reference values, exact
action evaluation, config round trips, and a small end-to-end solve."""

import json
import math
import os
import tempfile

import philap


def test_builtin_names():
    assert set(philap.builtin_names()) == {"example51", "example52", "remark11"}


def test_verify_passes_on_builtins():
    for name in philap.builtin_names():
        rep = philap.verify(name)
        assert rep["all_passed"] is True, name
        assert len(rep["checks"]) > 4
        assert all(c["passed"] for c in rep["checks"])


def test_reference_values():
    ref = philap.example51_reference(1.0, 2.0)
    assert abs(ref["gamma"] + 27.0 / 64.0) < 1e-15
    assert abs(ref["mu_threshold"] - 91.0 / 64.0) < 1e-15
    assert abs(ref["beta_lower"] - 1536.0 / 16383.0) < 1e-12
    assert ref["beta_valid"] is True
    assert ref["weight_sum"] == 4.0


def test_action_value_and_gradient():
    cfg = json.loads(philap.config_json("example51"))
    n = 2 * cfg["T"] * cfg["N"]
    assert abs(philap.action_value("example51", [0.75] * n) - 1.828125) < 1e-12
    g0 = philap.action_gradient("example51", [0.0] * n)
    assert max(abs(v) for v in g0) < 1e-14
    r0 = philap.residual("example51", [0.0] * n)
    assert max(abs(v) for v in r0) < 1e-14


def test_residual_negates_gradient():
    cfg = json.loads(philap.config_json("remark11"))
    n = 2 * cfg["T"] * cfg["N"]
    coords = [math.sin(3.0 * k + 0.2) for k in range(n)]
    g = philap.action_gradient("remark11", coords)
    r = philap.residual("remark11", coords)
    scale = 1.0 + max(abs(v) for v in g)
    assert max(abs(a + b) for a, b in zip(r, g)) / scale < 1e-12


def test_config_round_trip_through_file():
    text = philap.config_json("example52")
    fd, path = tempfile.mkstemp(suffix=".json")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        assert philap.config_json(path) == text
    finally:
        os.unlink(path)


def test_bad_config_raises():
    try:
        philap.config_json("/no/such/file.json")
    except philap.ConfigError:
        pass
    else:
        raise AssertionError("expected ConfigError")


def test_small_solve_finds_rest_point():
    pts = philap.solve("example51")
    assert len(pts) >= 1
    sups = [max(abs(v) for v in p["coords"]) for p in pts]
    assert min(sups) < 1e-5  # the rest point is in the list
    assert all(p["residual_inf"] <= 1e-8 for p in pts)


def test_ricceri_interval():
    out = philap.ricceri("example51", r=1.0, mu=2.0)
    assert abs(out["gamma"] + 27.0 / 64.0) < 1e-6
    assert out["beta"] >= 1536.0 / 16383.0 - 1e-6
    assert out["interval_valid"] is True
    assert out["lambda_lo"] == 0.0 and out["lambda_hi"] == out["beta"]
