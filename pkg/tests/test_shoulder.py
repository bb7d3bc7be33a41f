import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swfront import shoulder as sh
from swfront.errors import DomainError

STEEP = sh.PiecewiseParabolaScenario(1.0, -1.0, 2.0)
SHALLOW = sh.PiecewiseParabolaScenario(1.0, -1.0, 1.4)


@pytest.fixture(scope="module")
def steep_chart():
    return sh.build_chart(STEEP)


def test_scenario_validation():
    assert STEEP.x0 == 1.0
    with pytest.raises(DomainError, match="corner must be wet"):
        sh.PiecewiseParabolaScenario(1.0, -1.0, 0.5)
    with pytest.raises(DomainError):
        sh.PiecewiseParabolaScenario(1.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        sh.PiecewiseParabolaScenario(0.0, -1.0, 2.0)


def test_time_of_sigma():
    assert sh.pp_time_of_sigma(-1.0, 1.0) == 0.0
    assert sh.pp_time_of_sigma(-1.0, 1 / 1.4) == pytest.approx(0.672, abs=5e-3)
    s = np.linspace(0.01, 1.0, 50)
    t = [sh.pp_time_of_sigma(-2.0, v) for v in s]
    assert np.all(np.diff(t) < 0)
    with pytest.raises(DomainError):
        sh.pp_time_of_sigma(-1.0, 0.0)


@given(st.floats(0.02, 0.999), st.floats(-5, -0.1))
@settings(max_examples=50)
def test_sigma_round_trip(s, g0):
    t = sh.pp_time_of_sigma(g0, s)
    assert sh.pp_sigma_of_time(g0, t) == pytest.approx(s, abs=1e-12)


def test_core_state_examples():
    assert sh.pp_core_state(-1.0, 2.0, 1.0) == (0.0, -1.0, 2.0)
    a, g, m = sh.pp_core_state(-1.0, 2.0, 0.5)
    assert (a, g, m) == pytest.approx((math.sqrt(0.5), -0.125, 1.0))


@given(st.floats(0.05, 0.95), st.floats(-4, -0.2), st.floats(1.1, 3))
def test_core_state_solves_flat_bottom_odes(s, g0, mu0):
    # alpha' + alpha^2 + 2 gamma = 0, gamma' + 3 alpha gamma = 0, mu' + alpha mu = 0
    a, g, m = sh.pp_core_state(g0, mu0, s)
    ds = sh.pp_sigma_rate(g0, s)
    h = 1e-6
    d = [(p - q) / (2 * h) * ds for p, q in zip(sh.pp_core_state(g0, mu0, s + h),
                                                 sh.pp_core_state(g0, mu0, s - h))]
    scale = 1 + abs(a) ** 2 + abs(g)
    assert abs(d[0] + a * a + 2 * g) / scale <= 1e-7
    assert abs(d[1] + 3 * a * g) / scale <= 1e-7
    assert abs(d[2] + a * m) / (1 + abs(a * m)) <= 1e-7


def test_sigma_rate_matches_time_derivative():
    s, h = 0.6, 1e-6
    dt = (sh.pp_time_of_sigma(-1.0, s + h) - sh.pp_time_of_sigma(-1.0, s - h)) / (2 * h)
    assert 1 / dt == pytest.approx(sh.pp_sigma_rate(-1.0, s), rel=1e-7)


def test_left_front():
    assert sh.pp_left_front(STEEP, 1.0) == STEEP.x0
    assert sh.pp_left_front(STEEP, STEEP.sigma_c) == pytest.approx(0.0, abs=1e-15)
    assert sh.pp_left_front(STEEP, 0.75) == pytest.approx((math.sqrt(0.75) - 0.5) / 0.75)
    with pytest.raises(DomainError):
        sh.pp_left_front(STEEP, 0.3)
    xs = [sh.pp_left_front(STEEP, s) for s in np.linspace(1.0, 0.5, 40)]
    assert np.all(np.diff(xs) < 0)


def test_regimes():
    r = sh.pp_regime(STEEP)
    assert r.kind == "ShockBeforeCoalescence"
    assert r.t_sh == pytest.approx(2 / 3, abs=1e-15)
    r = sh.pp_regime(SHALLOW)
    assert r.kind == "CoalescenceBeforeShock"
    assert r.t_c == pytest.approx(0.672, abs=5e-3)
    assert r.t_sh == pytest.approx(1.054, abs=5e-3)
    assert r.critical_ratio == pytest.approx(0.6213, abs=5e-4)


def test_critical_ratio_balances_times():
    rho = sh.critical_ratio()
    sc = sh.PiecewiseParabolaScenario(1.0, -1.0, 1.0 / rho)
    assert sh.pp_shock_time(sc) == pytest.approx(sh.pp_coalescence_time(sc), rel=1e-10)


def test_chart_boundaries(steep_chart):
    c = steep_chart
    assert c.N[0] == pytest.approx(STEEP.Q, abs=1e-15)
    assert (c.N[-1], c.V[-1]) == (STEEP.Q, 0.0)
    # constant Riemann invariant across the chart
    assert np.max(np.abs(c.V - 2 * np.sqrt(c.N) + 2 * math.sqrt(STEEP.Q))) <= 1e-12
    assert np.all(c.X_left[1:-1] < c.X_right[1:-1])


def test_char_map(steep_chart):
    c = steep_chart
    assert sh.char_map(c, 0.3, 0.3) == pytest.approx(c.left(0.3))
    assert sh.char_map(c, 0.0, 0.5) == pytest.approx(c.right(0.5))
    for t0 in (0.05, 0.2, 0.4):
        x = sh.char_map(c, t0, 0.6)
        assert c.left_boundary(0.6) < x < c.right(0.6)
    with pytest.raises(DomainError):
        sh.char_map(c, 0.5, 0.4)


def test_shock_time_of_char(steep_chart):
    assert sh.shock_time_of_char(sh.constant_chart(1.0), 0.3) == math.inf
    assert sh.shock_time_of_char(steep_chart, 0.0) == pytest.approx(2 / 3, rel=1e-12)


def test_shock_time_against_pairwise_crossing(steep_chart):
    c = steep_chart
    t0 = 0.2
    tau = sh.shock_time_of_char(c, t0)
    for d, tol in ((1e-3, 1e-2), (1e-5, 1e-4)):
        s1 = 3 * c.sqrt_depth(t0) - 2
        s2 = 3 * c.sqrt_depth(t0 + d) - 2
        # lines x = X_l(t0) + s (t - t0) meet at
        cross = (c.left(t0 + d) - c.left(t0) + s1 * t0 - s2 * (t0 + d)) / (s1 - s2)
        assert cross == pytest.approx(tau, rel=tol)


def test_earliest_shock_examples(steep_chart):
    assert sh.earliest_shock(steep_chart) == pytest.approx(2 / 3, abs=1e-10)
    assert sh.earliest_shock(sh.build_chart(SHALLOW)) == pytest.approx(1.054, abs=5e-3)
    assert sh.earliest_shock(sh.constant_chart(1.0)) is None


def test_earliest_shock_on_plain_label_grid(steep_chart):
    # the generic search over t0 labels agrees with the sigma-based search
    t = sh.earliest_shock(steep_chart, labels=steep_chart.labels)
    assert t == pytest.approx(2 / 3, abs=1e-8)


def test_earliest_shock_random_scenarios():
    rng = np.random.default_rng(3)
    for _ in range(20):
        Q = rng.uniform(0.2, 3.0)
        g0 = -rng.uniform(0.2, 4.0)
        mu0 = Q * rng.uniform(1.05, 4.0)
        sc = sh.PiecewiseParabolaScenario(Q, g0, mu0)
        t = sh.earliest_shock(sh.build_chart(sc, 256))
        assert t == pytest.approx(sh.pp_shock_time(sc), abs=1e-10)


def test_half_slope_at_corner(steep_chart):
    # surface slope just right of the corner is half the initial inner slope
    want = STEEP.gamma0 * STEEP.x0
    got = sh.shoulder_slope(steep_chart, 0.0, 1e-9)
    assert got == pytest.approx(want, abs=1e-6)


def test_fields_at_start_and_symmetry():
    x = np.linspace(-2, 2, 81)
    eta, u = sh.pp_fields(STEEP, x, 0.0)
    assert np.allclose(eta, STEEP.eta_initial(x))
    assert not np.any(u)
    eta, u = sh.pp_fields(STEEP, x, 0.4)
    assert np.allclose(eta, eta[::-1]) and np.allclose(u, -u[::-1])
    # continuity at both shoulder boundaries
    c = sh.build_chart(STEEP, 64)
    for xb in (c.left_boundary(0.4), c.right(0.4)):
        e, _ = sh.pp_fields(STEEP, [xb - 1e-9, xb + 1e-9], 0.4, c)
        assert abs(e[0] - e[1]) <= 1e-6
