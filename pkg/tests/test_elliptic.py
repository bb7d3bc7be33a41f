import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from swfront.elliptic import carlson_rc, carlson_rf, carlson_rj, ellint_F, ellint_Pi
from swfront.errors import DomainError


def quad_F(phi, k):
    return integrate.quad(lambda t: 1 / math.sqrt(1 - (k * math.sin(t)) ** 2), 0, phi,
                          epsabs=0, epsrel=1e-13)[0]


def quad_Pi(n, phi, k):
    return integrate.quad(lambda t: 1 / ((1 - n * math.sin(t) ** 2)
                                         * math.sqrt(1 - (k * math.sin(t)) ** 2)),
                          0, phi, epsabs=0, epsrel=1e-13)[0]


def test_trivial_values():
    assert ellint_F(0.0, 0.7) == 0.0
    assert ellint_F(math.pi / 2, 0.0) == pytest.approx(math.pi / 2, rel=1e-15)
    assert ellint_Pi(0.0, math.pi / 2, 0.0) == pytest.approx(math.pi / 2, rel=1e-15)


def test_quadrature_examples():
    assert ellint_F(math.pi / 3, 0.5) == pytest.approx(quad_F(math.pi / 3, 0.5), rel=1e-10)
    assert ellint_Pi(-0.3, math.pi / 2, 0.6) == pytest.approx(quad_Pi(-0.3, math.pi / 2, 0.6),
                                                               rel=1e-10)


def test_carlson_against_scipy():
    # scipy ships Carlson's integrals; used here as an independent check only
    for args in [(0.5, 1.0, 2.0), (0.0, 1.0, 3.0), (1e-6, 2.0, 0.1)]:
        assert carlson_rf(*args) == pytest.approx(special.elliprf(*args), rel=1e-13)
    assert carlson_rj(0.5, 1.0, 2.0, 0.7) == pytest.approx(special.elliprj(0.5, 1.0, 2.0, 0.7),
                                                          rel=1e-13)
    assert carlson_rj(0.5, 1.0, 2.0, -0.7) == pytest.approx(special.elliprj(0.5, 1.0, 2.0, -0.7),
                                                           rel=1e-12)
    assert carlson_rc(2.0, 1.0) == pytest.approx(special.elliprc(2.0, 1.0), rel=1e-14)
    assert carlson_rc(1.0, -2.0) == pytest.approx(special.elliprc(1.0, -2.0), rel=1e-14)


def test_reduction_identities_on_grid():
    worst = 0.0
    for phi in np.linspace(0, math.pi / 2, 20):
        for k in np.linspace(0, 0.99, 20):
            F = ellint_F(phi, k)
            worst = max(worst, abs(ellint_Pi(0.0, phi, k) - F))
            if k == 0:
                worst = max(worst, abs(F - phi))
    assert worst <= 1e-12


phis = st.floats(0, math.pi / 2)
ks = st.floats(0, 0.99)
ns = st.floats(-5, 0.95)


@given(phis, ks, ns)
def test_against_quadrature_random(phi, k, n):
    assert ellint_F(phi, k) == pytest.approx(quad_F(phi, k), rel=1e-10, abs=1e-14)
    assert ellint_Pi(n, phi, k) == pytest.approx(quad_Pi(n, phi, k), rel=1e-10, abs=1e-14)


def test_against_quadrature_500_triples():
    rng = np.random.default_rng(7)
    worst = 0.0
    for phi, k, n in zip(rng.uniform(0, math.pi / 2, 500), rng.uniform(0, 0.99, 500),
                         rng.uniform(-5, 0.95, 500)):
        ref = quad_Pi(n, phi, k)
        if ref:
            worst = max(worst, abs(ellint_Pi(n, phi, k) - ref) / ref)
    assert worst <= 1e-10


@given(st.floats(0.01, 1.5), st.floats(0.0, 0.9), st.floats(0.001, 0.05))
def test_F_increasing(phi, k, d):
    assert ellint_F(phi + d, k) > ellint_F(phi, k)
    assert ellint_F(phi, k + d) > ellint_F(phi, k)


@pytest.mark.parametrize("call", [
    lambda: ellint_F(0.5, 1.0),
    lambda: ellint_F(2.0, 0.5),
    lambda: ellint_F(-0.1, 0.5),
    lambda: ellint_Pi(1.0, 0.5, 0.5),
    lambda: ellint_Pi(0.2, 0.5, 1.2),
    lambda: carlson_rf(0.0, 0.0, 1.0),
    lambda: carlson_rf(-1.0, 1.0, 1.0),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()
