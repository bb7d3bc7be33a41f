import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swfront import hierarchy as hi
from swfront.bathymetry import BottomProfile, taylor_coeffs
from swfront.errors import DomainError, GradientCatastrophe
from swfront.integrate import dopri5

BOWL = BottomProfile.parabolic()


def test_front_speed():
    assert hi.front_speed(-1.0) == 1.0
    assert hi.front_speed(-2.0) == math.sqrt(2.0)
    assert hi.front_speed(-0.75) == math.sqrt(0.75)
    assert hi.front_speed(-4.0, -1) == -2.0
    with pytest.raises(DomainError):
        hi.front_speed(0.0)


# --- still-water fronts -----------------------------------------------------------

def test_still_front_invariants():
    s = hi.still_front(BOWL, 0.5, [0.0, 0.3, -0.1])
    assert s.u[0] == 0.0 and s.h[0] == 0.0
    assert s.Xdot ** 2 + BOWL.eval(0.5) == pytest.approx(0.0, abs=1e-15)
    # the first slope is slaved to u_1 by zeta_1 = Xdot u_1
    assert s.h[1] == pytest.approx(s.Xdot * 0.3, rel=1e-15)


def test_still_flat_quiescent_is_stationary():
    s = hi.still_front(BottomProfile.flat(1.0), 0.0, np.zeros(4))
    V, zdot, udot = hi.hierarchy_rhs_still(s, BottomProfile.flat(1.0))
    assert V == 1.0
    assert not np.any(zdot) and not np.any(udot)


@given(st.floats(-0.9, 0.9), st.floats(-2, 2), st.sampled_from([1, -1]),
       st.lists(st.floats(-1, 1), min_size=4, max_size=4))
@settings(max_examples=100)
def test_first_order_gives_riccati_pair(x, u1, d, c):
    # u1' + 3/2 u1^2 + 5 Xdd/(2 Xd) u1 = 0 and zeta1' + 3/(2 Xd) zeta1^2 + 3 Xdd/(2 Xd) zeta1 = 0
    profile = BottomProfile.polynomial([-1.5 + 0.1 * c[0], c[1] * 0.2, c[2] * 0.3, 0.05 + 0.1 * abs(c[3])])
    if profile.eval(x) >= -0.1:
        return
    s = hi.still_front(profile, x, [0.0, u1], d)
    V, zdot, udot = hi.hierarchy_rhs_still(s, profile)
    A = -0.5 * profile.derivative(x)
    z1 = s.h[1]
    assert udot[1] == pytest.approx(-1.5 * u1 * u1 - 2.5 * A / V * u1, rel=1e-12, abs=1e-12)
    assert zdot[1] == pytest.approx(-1.5 / V * z1 * z1 - 1.5 * A / V * z1, rel=1e-12, abs=1e-12)


def test_still_rhs_matches_trajectory_derivative():
    profile = BottomProfile.polynomial([-1.0, 0.2, 0.3, -0.1])
    s0 = hi.still_front(profile, 0.1, [0.0, 0.2, -0.3, 0.1])
    traj, state_at = hi.integrate_still(s0, profile, 0.2, 1e-12)
    t, h = 0.1, 1e-4
    dy = (traj(t + h) - traj(t - h)) / (2 * h)
    i = int(np.argmin(np.abs(traj.t - t)))
    s = state_at(i)
    V, zdot, udot = hi.hierarchy_rhs_still(s, profile)
    dy_i = (traj(traj.t[i] + h) - traj(traj.t[i] - h)) / (2 * h)
    assert dy_i[0] == pytest.approx(V, abs=1e-6)
    assert dy_i[1:] == pytest.approx(udot[1:], abs=1e-6)
    assert np.all(np.isfinite(dy))


def test_still_order_robustness():
    profile = BottomProfile.polynomial([-1.0, 0.1, 0.2, 0.05])
    u = [0.0, 0.2, -0.1, 0.05, 0.0, 0.0]
    lo, _ = hi.integrate_still(hi.still_front(profile, 0.0, u[:4]), profile, 0.5, 1e-12)
    hi2, _ = hi.integrate_still(hi.still_front(profile, 0.0, u), profile, 0.5, 1e-12)
    for t in (0.1, 0.3, 0.5):
        assert lo(t)[:4] == pytest.approx(hi2(t)[:4], abs=1e-8)


# --- vacuum points -------------------------------------------------------------

def test_vacuum_rows_table_examples():
    flat = BottomProfile.flat(1.0)
    s = hi.vacuum_front("physical", 0.0, [0.0, 1.0, 0.0], [0.0, -2.0, 0.0])
    _, _, ed, _ = hi.hierarchy_rhs_vacuum(s, flat)
    assert ed[1] == 4.0          # eta1' + 2 u1 eta1 = 0 with u1 = 1, eta1 = -2
    s = hi.vacuum_front("nonphysical", 0.0, [0.0, 1.0, 1.0, 0.0], [0.0, 0.0, 0.0, 0.0])
    _, ud, _, _ = hi.hierarchy_rhs_vacuum(s, flat)
    assert ud[2] == -3.0         # u2' + 3 b3 + 3 u1 u2 + 3 eta3 = 0


def test_vacuum_row_eta1_positive_example():
    # the row evaluated with eta1 = 2 as a bare algebraic check
    s = hi.FrontSeriesState("nonphysical", 0.0, 0.0, [0.0, 1.0], [0.0, 2.0])
    _, _, ed, _ = hi.hierarchy_rhs_vacuum(s, BottomProfile.flat(1.0))
    assert ed[1] == -4.0


def test_vacuum_acceleration():
    p = BottomProfile.polynomial([-1.0, 0.5, 1.0])
    s = hi.vacuum_front("physical", 0.3, [0.2, 0.1, 0.0], [0.0, -1.0, 0.2])
    xd, ud, _, _ = hi.hierarchy_rhs_vacuum(s, p)
    assert xd == 0.2
    assert ud[0] == pytest.approx(-(0.5 + 2 * 0.3) + 1.0)


def test_quadratic_tail_stays_zero():
    s = hi.vacuum_front("physical", 0.2, [0.1, 0.3, 0.0, 0.0, 0.0], [0.0, -1.0, -0.5, 0.0, 0.0])
    _, ud, ed, _ = hi.hierarchy_rhs_vacuum(s, BottomProfile.quadratic(-1.0, 0.1, 0.7))
    assert not np.any(ud[2:]) and not np.any(ed[3:])


@pytest.mark.parametrize("kind, eta", [("physical", [0.0, 0.5]), ("nonphysical", [0.0, -1.0]),
                                       ("physical", [0.1, -1.0]), ("still", [0.0, -1.0])])
def test_vacuum_front_rejects(kind, eta):
    with pytest.raises(DomainError):
        hi.vacuum_front(kind, 0.0, [0.0, 0.0], eta)


def test_eta1_preserved_on_polynomial_bottom():
    p = BottomProfile.polynomial([-1.0, 0.05, 0.3, 0.02, -0.01])
    s = hi.vacuum_front("nonphysical", 0.1, [0.1, 0.2, 0.05, 0.0], [0.0, 0.0, -0.3, 0.01])
    seen = []
    hi.integrate_vacuum(s, p, 2.0, 1e-11, lambda t, st_, d: seen.append(abs(st_.h[1])))
    assert max(seen) <= 1e-12


def test_nonphysical_order_robustness():
    # the rows are triangular once eta1 = 0, so lower orders ignore the extra unknowns
    p = BottomProfile.polynomial([-1.0, 0.05, 0.3, 0.02])
    u = [0.1, 0.2, 0.05, 0.01, 0.0, 0.0]
    eta = [0.0, 0.0, -0.3, 0.01, 0.0, 0.0]
    N = 3
    a, _ = hi.integrate_vacuum(hi.vacuum_front("nonphysical", 0.1, u[:N + 1], eta[:N + 1]), p, 2.0, 1e-12)
    b, _ = hi.integrate_vacuum(hi.vacuum_front("nonphysical", 0.1, u, eta), p, 2.0, 1e-12)
    for t in (0.5, 1.0, 2.0):
        ya, yb = a(t), b(t)
        # X, u0..u_{N-1}
        assert ya[:N + 1] == pytest.approx(yb[:N + 1], abs=1e-8)
        # eta2..eta_N
        assert ya[N + 3:2 * N + 2] == pytest.approx(yb[len(u) + 2:len(u) + N + 1], abs=1e-8)


def test_quadratic_truncation_matches_general_rows():
    c1, c2 = 0.3, 1.4
    p = BottomProfile.quadratic(-1.0, c1, c2 / 2)
    s = hi.vacuum_front("physical", 0.2, [0.1, 0.4, 0.0], [0.0, -1.1, -0.6])
    xd, ud, ed, _ = hi.hierarchy_rhs_vacuum(s, p)
    ref = hi.quadratic_truncation_rhs(0.2, 0.1, -1.1, -0.6, 0.4, c1, c2)
    assert (xd, ud[0], ed[1], ed[2], ud[1]) == pytest.approx(ref, abs=1e-15)


def test_dry_side_velocity_jump_law():
    s = hi.vacuum_front("physical", 0.4, [0.1, 0.2, 0.0], [0.0, -1.0, -0.5])
    assert s.jump == 0.0
    worst = [0.0]

    def hook(t, st_, d):
        worst[0] = max(worst[0], abs(d.u_dry[0] - d.u[0] - st_.h[1]))

    hi.integrate_vacuum(s, BOWL, 0.5, 1e-10, hook)
    assert worst[0] <= 1e-12


# --- front motion and reduced pair -------------------------------------------------

def test_nonphysical_motion_closed_forms():
    assert hi.nonphysical_front_motion(BOWL, 0.5, 0.0, math.pi * math.sqrt(2)) == pytest.approx(0.5)
    lin = BottomProfile.linear(-1.0, 0.4)
    t = np.array([0.0, 0.5, 2.0])
    assert np.allclose(hi.nonphysical_front_motion(lin, 0.1, 0.3, t), 0.1 + 0.3 * t - 0.2 * t * t)


def test_nonphysical_closed_form_against_integration():
    for p in (BOWL, BottomProfile.quadratic(-1.0, 0.2, -0.3)):
        num = hi.front_path_numeric(p, 0.2, 0.1, 1.0)
        assert hi.nonphysical_front_motion(p, 0.2, 0.1, 1.0) == pytest.approx(num(1.0)[0], abs=1e-10)


def test_duffing_energy_conserved():
    p = BottomProfile.quartic(0.0, 1.0, 1.0)
    traj = hi.front_path_numeric(p, 0.3, 0.0, 50.0, 1e-13)
    E = 0.5 * traj.y[:, 1] ** 2 + p.eval(traj.y[:, 0])
    assert np.max(np.abs(E - E[0])) <= 1e-10
    assert hi.nonphysical_front_motion(p, 0.3, 0.0, 50.0) == pytest.approx(traj(50.0)[0], abs=1e-9)


def test_reduced_pair_equilibrium():
    tr = hi.reduced_u1eta2_step(0.0, -1.0, lambda t: 1.0, 5.0)
    assert np.max(np.abs(tr.y - [0.0, -1.0])) == 0.0


def test_reduced_pair_phi_form_agrees():
    b2 = hi.duffing_b2(BottomProfile.quartic(-1.0, 1.0, 1.0), 0.3, 0.0, 3.0)
    direct = hi.reduced_u1eta2_step(0.2, -0.8, b2, 3.0, 1e-12)
    fields, _ = hi.reduced_phi_form(0.2, -0.8, b2, 3.0, 1e-12)
    for t in (0.5, 1.5, 3.0):
        assert fields(t) == pytest.approx(tuple(direct(t)), abs=1e-8)


def test_reduced_pair_small_data_exists():
    b2 = hi.duffing_b2(BottomProfile.quartic(-1.0, 1.0, 1.0), 0.3, 0.0, 10.0)
    tr = hi.reduced_u1eta2_step(0.01, -0.99, b2, 10.0)
    assert tr.t_final == pytest.approx(10.0)
    assert np.all(np.isfinite(tr.y))


# --- Riccati slope and shock position -------------------------------------------

def test_riccati_zero_slope():
    path = hi.still_front_path(BOWL, 0.2)
    assert hi.riccati_slope_time(path, 0.0, 0.5) == 0.0


def test_riccati_flat_catastrophe():
    flat = BottomProfile.flat(1.0)
    path = hi.still_front_path(flat, 0.0)
    assert hi.riccati_catastrophe_time(path, -0.5) == pytest.approx(4 / 3, rel=1e-12)
    assert hi.shock_position(flat, 0.0, -0.5) == pytest.approx(4 / 3, rel=1e-12)
    assert hi.riccati_slope_time(path, -0.5, 1.0) == pytest.approx(1 / (-2 + 1.5), rel=1e-12)
    with pytest.raises(GradientCatastrophe) as info:
        hi.riccati_slope_time(path, -0.5, 1.5)
    assert info.value.time == pytest.approx(4 / 3)


def test_riccati_bowl_against_ode():
    x0, z0 = 0.2, -0.25
    path = hi.still_front_path(BOWL, x0)

    def rhs(t, y):
        X, V, z = y
        A = -0.5 * BOWL.derivative(X)
        return np.array([V, A, -1.5 / V * z * z - 1.5 * A / V * z])

    tr = dopri5(rhs, 0.0, [x0, math.sqrt(-BOWL.eval(x0)), z0], 0.8, rtol=1e-12, atol=1e-12)
    for t in (0.3, 0.6, 0.8):
        assert hi.riccati_slope_time(path, z0, t) == pytest.approx(tr(t)[2], rel=1e-8)


def test_bowl_path_closed_form():
    path = hi.still_front_path(BOWL, 0.0)
    assert float(path.position(math.pi / 2)) == pytest.approx(1.0)
    assert path.t_max == pytest.approx(math.pi / 2)
    path = hi.still_front_path(BOWL, 0.3)
    assert float(path.position(0.4)) == pytest.approx(math.sin(math.asin(0.3) + 0.4))


def test_numeric_path_stops_at_shoreline():
    p = BottomProfile.quartic(-1.0, 1.0, 0.5)
    path = hi.still_front_path(p, 0.3)
    xs = p.shoreline(0.3)
    assert float(path.position(path.t_max)) == pytest.approx(xs, abs=1e-6)
    # the speed obeys Xdot^2 = -b along the path
    for t in np.linspace(0, 0.9 * path.t_max, 5):
        assert float(path.speed(t)) ** 2 == pytest.approx(-p.eval(float(path.position(t))), abs=1e-9)


@pytest.mark.parametrize("profile, x0, z0", [
    (BOWL, 0.2, -0.25),
    (BOWL, 0.5, -0.1),
    (BottomProfile.quartic(-1.0, 1.0, 0.5), 0.3, -0.3),
    (BottomProfile.linear(-1.0, 0.5), 0.0, -0.4),
])
def test_shock_position_two_routes(profile, x0, z0):
    path = hi.still_front_path(profile, x0)
    t_cat = hi.riccati_catastrophe_time(path, z0)
    x_sh = hi.shock_position(profile, x0, z0)
    assert float(path.position(t_cat)) == pytest.approx(x_sh, abs=1e-8)


def test_bowl_breaks_before_shoreline():
    x_sh = hi.shock_position(BOWL, 0.5, -0.1)
    assert 0.5 < x_sh < 1.0
    # shock time is the arc-length difference on the bowl
    t = hi.riccati_catastrophe_time(hi.still_front_path(BOWL, 0.5), -0.1)
    assert t == pytest.approx(math.asin(x_sh) - math.asin(0.5), abs=1e-10)


def test_shock_position_frozen_value():
    assert hi.shock_position(BOWL, 0.2, -0.25) == pytest.approx(0.9201809269101144, abs=1e-12)


def test_no_catastrophe_for_nonnegative_slope():
    with pytest.raises(hi.NoCatastrophe):
        hi.shock_position(BOWL, 0.5, 0.1)
    assert hi.riccati_catastrophe_time(hi.still_front_path(BOWL, 0.5), 0.1) is None


@given(st.floats(0.05, 2.0), st.floats(1.05, 3.0))
@settings(max_examples=25, deadline=None)
def test_catastrophe_earlier_for_steeper_slope(a, f):
    path = hi.still_front_path(BOWL, 0.3)
    t1 = hi.riccati_catastrophe_time(path, -a)
    t2 = hi.riccati_catastrophe_time(path, -a * f)
    assert t2 < t1


def test_shoulder_initial_slope():
    assert hi.shoulder_initial_slope(-0.4, -1.0) == pytest.approx((-0.2, -0.2))
    assert hi.shoulder_initial_slope(0.0, -1.0) == (0.0, 0.0)
    assert hi.shoulder_initial_slope(-0.4, -4.0) == pytest.approx((-0.2, -0.1))
    with pytest.raises(DomainError):
        hi.shoulder_initial_slope(-0.4, 0.0)


def test_corner_split_fronts():
    left, right = hi.corner_split_fronts(BOWL, 0.0)
    assert float(right.position(math.pi / 2)) == pytest.approx(1.0)
    assert float(left.position(math.pi / 2)) == pytest.approx(-1.0)
    left, right = hi.corner_split_fronts(BottomProfile.flat(4.0), 0.5)
    assert float(right.position(0.7)) == pytest.approx(0.5 + 2 * 0.7)
    with pytest.raises(DomainError):
        hi.corner_split_fronts(BOWL, 1.5)


def test_corner_left_characteristic_with_flow():
    # uniform flow (eta, u) = (1, 0.5): the left characteristic moves at u - sqrt(eta)
    left, _ = hi.corner_split_fronts(BottomProfile.flat(1.0), 0.0, lambda x, t: (1.0, 0.5), 2.0)
    assert float(left.position(2.0)) == pytest.approx(-1.0, abs=1e-10)


# --- velocity jump -------------------------------------------------------------------

def test_velocity_jump_constant_rate():
    vj = hi.velocity_jump_evolution(lambda t: -2.0, 0.0, 0.5)
    assert vj.jump[0] == pytest.approx(-1.0)
    assert vj.rate[0] == -2.0


def test_velocity_jump_from_unit_drop():
    from swfront import selfsim
    s = selfsim.selfsim_to_series(selfsim.ParabolicState(0, -1, 1, 0, 0))
    assert s.h[1] == -2.0
    vj = hi.velocity_jump_evolution(lambda t: s.h[1], 0.0, [0.1, 0.2])
    assert np.allclose(vj.jump, [-0.2, -0.4])


@given(st.floats(-3, 3), st.floats(0.1, 3), st.floats(0.0, 2.0))
@settings(max_examples=50)
def test_jump_vanishes_at_most_once(j0, a, w):
    # eta1 of constant (negative) sign makes the jump strictly monotone
    ts = np.linspace(0, 5, 60)
    vj = hi.velocity_jump_evolution(lambda t: -a * (1 + 0.5 * math.sin(w * t)), j0, ts)
    signs = np.sign(vj.jump)
    assert np.all(np.diff(vj.jump) < 0)
    assert np.count_nonzero(np.diff(signs[signs != 0])) <= 1
