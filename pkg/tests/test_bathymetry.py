import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swfront.bathymetry import BottomProfile, nondimensionalize, taylor_coeffs
from swfront.errors import DomainError

coef = st.floats(-3, 3, allow_nan=False)


def test_named_constructors():
    assert BottomProfile.flat(2.0).eval(5.0) == -2.0
    assert BottomProfile.linear(-1.0, 0.5).eval(2.0) == 0.0
    assert BottomProfile.quadratic(-1, 0, 1).eval(0.5) == -0.75
    # quartic uses the c2 x^2/2 + c4 x^4/4 form
    assert BottomProfile.quartic(0.0, 1.0, 1.0).eval(2.0) == pytest.approx(2.0 + 4.0)


def test_parabolic_is_bowl():
    p = BottomProfile.parabolic()
    xs = np.random.default_rng(1).uniform(-1, 1, 100)
    assert np.max(np.abs(p.eval(xs) - (xs**2 - 1))) <= 1e-15


@pytest.mark.parametrize("spec", [
    {"kind": "flat", "coeffs": [0.0]},
    {"kind": "linear", "coeffs": [1.0]},
    {"kind": "polynomial", "coeffs": [1.0, 0.0]},
    {"kind": "polynomial", "coeffs": [1.0] * 10},
    {"kind": "cosine", "coeffs": [1.0]},
    {"kind": "parabolic", "coeffs": [1.0]},
])
def test_from_spec_rejects(spec):
    with pytest.raises(DomainError):
        BottomProfile.from_spec(spec)


def test_spec_round_trip():
    p = BottomProfile.quartic(-1.0, 0.5, 2.0)
    assert BottomProfile.from_spec(p.to_spec()) == p


def test_derivative_is_exact():
    p = BottomProfile.polynomial([1.0, -2.0, 0.5, 3.0])
    x = 0.7
    assert p.derivative(x) == pytest.approx(-2.0 + 1.0 * x + 9.0 * x * x, rel=1e-15)
    assert p.derivative(x, 2) == pytest.approx(1.0 + 18.0 * x, rel=1e-15)
    assert p.derivative(x, 4) == 0.0


def test_shoreline():
    p = BottomProfile.parabolic()
    assert p.shoreline(0.2) == pytest.approx(1.0)
    assert p.shoreline(0.2, -1) == pytest.approx(-1.0)
    assert BottomProfile.flat(1.0).shoreline(0.0) is None
    with pytest.raises(DomainError):
        p.shoreline(2.0)


@given(st.lists(coef, min_size=1, max_size=6).filter(lambda c: c[-1] != 0), coef,
       st.integers(0, 9))
def test_taylor_coeffs_match_eval_and_vanish_past_degree(c, x, n):
    p = BottomProfile.polynomial(c)
    t = taylor_coeffs(p, x, n)
    assert len(t) == n + 1
    assert t[0] == pytest.approx(p.eval(x), rel=1e-12, abs=1e-12)
    assert all(v == 0.0 for v in t[len(c):])


@given(st.lists(coef, min_size=2, max_size=6).filter(lambda c: c[-1] != 0), coef, coef)
@settings(max_examples=50)
def test_taylor_shift_reproduces_polynomial(c, x, y):
    # sum b_k (y - x)^k equals b(y)
    p = BottomProfile.polynomial(c)
    t = taylor_coeffs(p, x, len(c) - 1)
    val = sum(tk * (y - x) ** k for k, tk in enumerate(t))
    assert val == pytest.approx(p.eval(y), rel=1e-9, abs=1e-9)


def test_scaling_examples():
    s = nondimensionalize(1, 1, 1)
    assert (s.length, s.time, s.velocity, s.height) == (1.0, 1.0, 1.0, 1.0)
    assert nondimensionalize(4, 1, 1).length == 0.5
    s = nondimensionalize(1, 9.8, 9.8)
    assert s.length == pytest.approx(math.sqrt(9.8))
    assert s.time == pytest.approx(1 / math.sqrt(9.8))


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.5, 20), st.floats(-1, 1))
def test_scaled_bowl_is_x2_minus_1(kappa, Q, g, xs):
    # dimensional bottom kappa x^2 - Q, measured in height units, becomes x^2 - 1
    s = nondimensionalize(kappa, Q, g)
    x = s.to_dimensional(x=xs)["x"]
    b = kappa * x * x - Q
    assert s.to_dimensionless(eta=b)["eta"] == pytest.approx(xs * xs - 1, abs=1e-12)


@pytest.mark.parametrize("args", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
def test_scaling_rejects_nonpositive(args):
    with pytest.raises(DomainError):
        nondimensionalize(*args)
