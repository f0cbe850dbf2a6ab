from fractions import Fraction

import pytest

from axialreg.asymptotics import (
    InvariantSelector,
    LinearFit,
    fit_eventual_linear,
    fit_report,
    power_sequence,
)
from axialreg.poly import QQ, Ring, make_ideal

R = Ring(QQ, ("x", "y"))
SQ = make_ideal(R, ["x^2", "x*y"])


def pts(*values, start=1):
    return [(start + k, v) for k, v in enumerate(values)]


def test_fit_examples():
    f = fit_eventual_linear(pts(2, 4, 6, 8, 10))
    assert (f.slope, f.intercept, f.stable_from, f.status) == (2, 0, 1, "stabilized")
    assert fit_eventual_linear(pts(3, 5)).status == "unstabilized"
    f = fit_eventual_linear(pts(4, 5, 8, 11, 14))
    assert f.slope == 3 and f.stable_from == 2 and f.stabilized
    assert all(f.predict(n) == v for n, v in f.window)
    assert f.intercept == -1


def test_fit_rejects_bad_input():
    with pytest.raises(ValueError, match="infinite"):
        fit_eventual_linear(pts(2, float("inf"), 4))
    with pytest.raises(ValueError):
        fit_eventual_linear(pts(2))


def test_fit_rational_slope():
    f = fit_eventual_linear([(2, 1), (4, 2), (6, 3), (8, 4)])
    assert f.slope == Fraction(1, 2) and f.intercept == 0


def test_selector_parsing():
    assert InvariantSelector.parse("sreg:2") == InvariantSelector("sreg", 2)
    assert InvariantSelector.parse("regularity") == InvariantSelector("regularity")
    for bad in ("sreg", "nope:1", "regularity:2", "axial:x"):
        with pytest.raises(ValueError):
            InvariantSelector.parse(bad)
    with pytest.raises(ValueError):
        power_sequence(SQ, "sreg:3", 2)


def test_power_sequences_of_sq():
    want = [(n, 2 * n) for n in range(1, 6)]
    s = power_sequence(SQ, "sreg:2", 5)
    assert list(s.points) == want
    assert list(power_sequence(SQ, "axial:1", 5).points) == want
    assert list(power_sequence(SQ, "regularity", 5).points) == want
    assert not s.truncated and not s.diagnostics


def test_single_power_is_the_invariant_itself():
    s = power_sequence(SQ, "sreg:1", 1)
    assert list(s.points) == [(1, 2)]


def test_infinite_values_allowed_in_sequences():
    s = power_sequence(SQ, "axial:2", 3)
    assert all(v == float("inf") for _, v in s.points)
    assert fit_report(s, None)["points"] == [[1, None], [2, None], [3, None]]


def test_reduction_along_powers():
    ci = make_ideal(R, ["x^2", "y^3"])
    s = power_sequence(ci, "reduction:0", 3)
    # R/I^n is artinian, r_0 is its top degree: reg(I^n) - 1
    assert [v for _, v in s.points] == [3, 6, 9]


def test_determinism():
    ci = make_ideal(R, ["x^2 - y^2", "x*y"])
    a = power_sequence(ci, "regularity", 3, seed=4)
    b = power_sequence(ci, "regularity", 3, seed=4)
    assert a.points == b.points


def test_budget_truncates():
    s = power_sequence(SQ, "sreg:2", 4, budget=0.0)
    assert s.truncated and len(s.points) == 1
    assert "budget" in s.diagnostics[0]


def test_fit_report_schema():
    s = power_sequence(SQ, "sreg:2", 5)
    doc = fit_report(s, fit_eventual_linear(s.points))
    assert doc["invariant"] == "sreg" and doc["i"] == 2
    assert doc["points"] == [[n, 2 * n] for n in range(1, 6)]
    assert (doc["slope"], doc["intercept"], doc["stable_from"], doc["status"]) == (2, 0, 1, "stabilized")
