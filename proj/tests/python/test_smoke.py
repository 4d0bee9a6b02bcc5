# Copyright 2026 The cpwave Authors
# SPDX-License-Identifier: Apache-2.0
import math

import pytest

import cpwave


def test_single_jump_coefficients():
    p = cpwave.path_from_times(1.0, [0.25], [1.0])
    assert p.jump_count == 1
    assert cpwave.coeff(p) == (0.75, 1)
    assert cpwave.coeff(p, 0, 0) == (-0.25, 1)
    assert cpwave.coeff(p, 1, 1) == (0.0, 0)
    assert p.eval(0.25) == 1.0
    assert p.l2_norm_sq() == 0.75


def test_selection_ordering_on_random_path():
    p = cpwave.sample_path(10.0, seed=5, stream_index=3)
    for m in (1, 4, 16, 64):
        lin = cpwave.select("linear", p, m)["error_sq"]
        gre = cpwave.select("greedy", p, m)["error_sq"]
        best = cpwave.select("best", p, m)
        assert best["error_sq"] <= gre * (1 + 1e-12)
        assert gre <= lin * (1 + 1e-12)
        assert len(best["kept"]) == m
        assert best["certified"]


def test_linear_select_hand_value():
    p = cpwave.path_from_times(1.0, [0.25], [1.0])
    s = cpwave.select("linear", p, 2)
    assert [k["ind"] for k in s["kept"]] == [0, 1]
    assert s["error_sq"] == pytest.approx(0.125, rel=1e-14)


def test_transforms_round_trip():
    x = cpwave.brownian_grid(1.0, 6, seed=1)
    for fwd, inv in ((cpwave.discrete_haar_forward, cpwave.discrete_haar_inverse),
                     (cpwave.dct2_forward, cpwave.dct2_inverse)):
        back = inv(fwd(x))
        assert max(abs(a - b) for a, b in zip(x, back)) < 1e-12


def test_theory_values():
    assert cpwave.linear_mse(8) == pytest.approx(1 / 48)
    assert cpwave.linear_mse(3) == pytest.approx(0.0625)
    assert cpwave.spacing_survival(1, 0.5) == 0.5
    assert cpwave.jm_bounds(10, 2, 0.1) == (4, 7)
    value, tail = cpwave.expected_two_pow(1.0, 1)
    assert value == pytest.approx(0.3788, abs=1e-4)
    env = cpwave.theorem1_envelope(4, 1.0)
    assert env["c2"] == pytest.approx(5.5927, rel=1e-4)
    assert env["envelope_lo"] <= env["envelope_hi"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        cpwave.linear_mse(0)
    with pytest.raises(ValueError):
        cpwave.run_mse_curve(process="bm", dictionary="haar", trials=2)
    with pytest.raises(ValueError):
        cpwave.discrete_haar_forward([1.0, 2.0, 3.0])


def test_mse_curve_is_deterministic():
    kwargs = dict(lambda_=10.0, schemes=["linear", "best"], m_values=[4, 8], trials=50, seed=9)
    a = cpwave.mse_curve_csv(**kwargs, threads=1)
    b = cpwave.mse_curve_csv(**kwargs, threads=2)
    assert a == b
    assert a.splitlines()[0] == (
        "process,scheme,dictionary,lambda,sigma0_sq,M,log2_M,mse_mean,mse_db,ci_lo,ci_hi,trials,seed")
    records = cpwave.run_mse_curve(**kwargs)
    assert len(records) == 4
    for r in records:
        assert r["ci_lo"] <= r["mse_mean"] <= r["ci_hi"]
        assert r["mse_db"] == pytest.approx(10 * math.log10(r["mse_mean"]))
