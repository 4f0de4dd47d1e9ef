import math

import pytest

import spectrascope as ss


def test_closed_form_bounds():
    assert ss.growth_bound_general(math.sqrt(2)) == pytest.approx(0.25, rel=1e-15)
    for k in range(3, 11):
        expected = 1 - 2 * math.sqrt(k - 1) / k
        assert abs(ss.growth_bound_bounded(math.log(k - 1), 1, 1) - expected) <= 1e-12
    assert ss.degenerate_bound(0.5) == 4.0
    assert ss.scalar_I(1.0) == pytest.approx(0.351946, rel=1e-6)


def test_bound_report():
    report = ss.bounds(math.inf, m=0.5)
    assert report["degenerate_bound"] == 4.0
    assert ss.bounds(math.sqrt(2))["general_bound"] == pytest.approx(0.25)


def test_ball_and_growth():
    b = ss.ball("tree:k=3", 2)
    assert len(b["vertices"]) == 10
    assert b["distances"] == sorted(b["distances"])
    g = ss.growth("tree:k=3", cap=200_000)
    assert g["classification"] == "exponential"
    assert g["mu_hat"] == pytest.approx(math.log(2), rel=0.02)


def test_lambda0_exhaustion():
    ex = ss.lambda0("bd:alpha=0", [1, 2, 3], metric="de:D=2", theta="one")
    values = [s["lambda"] for s in ex["steps"]]
    assert values == sorted(values, reverse=True)
    assert all(v >= 1 / 9 for v in values)


def test_analyze_small():
    r = ss.analyze("tree:k=3", theta="one", metric="scaled:A=3", cap=20_000, sparse_cap=20_000)
    assert r["exit_code"] == 0
    assert r["mu"]["classification"] == "exponential"


def test_walks_are_seeded():
    a = ss.heat_kernel("tree:k=3", 0, 0, [0.5, 1.0], paths=500, seed=3)
    b = ss.heat_kernel("tree:k=3", 0, 0, [0.5, 1.0], paths=500, seed=3)
    assert a == b
    assert 0 <= a[0]["p_hat"] <= 1


def test_errors():
    with pytest.raises(ss.UsageError):
        ss.ball("torus", 1)
    with pytest.raises(ss.BallCapExceeded):
        ss.ball("tree:k=3", 30, cap=100)
    with pytest.raises(ValueError):
        ss.growth_bound_general(math.inf)
