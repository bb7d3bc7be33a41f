"""The twelve acceptance criteria as runnable checks.

Each check returns a :class:`CriterionResult`; :func:`run_all` runs them
in order and prints one pass/fail line per criterion.  Random states come
from a fixed seed.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import hierarchy, refsolver, selfsim, shoulder
from .bathymetry import BottomProfile, taylor_coeffs
from .integrate import dopri5

SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f} s)"


def period_endpoints():
    lo = selfsim.period(-0.999)
    hi = selfsim.period(-0.001)
    grid = np.linspace(-0.999, -0.001, 50)
    T = np.array([selfsim.period(g) for g in grid])
    mono = bool(np.all(np.diff(T) < 0))
    ok = 2.555 <= lo <= 2.575 and 2.21 <= hi <= 2.24 and mono
    return ok, f"T(-0.999)={lo:.6f}, T(-0.001)={hi:.6f}, decreasing={mono}"


def elliptic_vs_quadrature():
    rng = np.random.default_rng(SEED)
    worst_p = 0.0
    for g in rng.uniform(-0.99, -0.01, 200):
        p = selfsim.period(g)
        worst_p = max(worst_p, abs(p - selfsim.period_quadrature(g)) / p)
    worst_b = 0.0
    for g in rng.uniform(0.01, 0.125, 200):
        q = selfsim.blowup_time(g)
        worst_b = max(worst_b, abs(selfsim.blowup_time_elliptic(g) - q) / q)
    ok = worst_p <= 1e-8 and worst_b <= 1e-8
    return ok, f"period rel err {worst_p:.2e}, blow-up rel err {worst_b:.2e}"


def blowup_asymptotics():
    small = selfsim.blowup_time(1e-6)
    d = abs(small - math.pi / 2 ** 1.5)
    ratio = selfsim.blowup_time(1e6) * 4 * math.sqrt(1e6) / math.pi
    ok = d <= 1e-3 and 0.99 <= ratio <= 1.01
    return ok, f"|t(1e-6) - pi/2^1.5|={d:.2e}, large-gamma ratio={ratio:.8f}"


def hamiltonian_conservation():
    s0 = selfsim.ParabolicState(0.0, -7.0, 1.0, 0.0, 0.0)
    T = selfsim.classify(-7.0).period
    H0 = selfsim.invariant_H(0.0, -7.0)
    worst = [0.0]

    def hook(t, y, f):
        worst[0] = max(worst[0], abs(selfsim.invariant_H(y[0], y[1]) - H0))

    dopri5(lambda t, y: selfsim._rhs(y), 0.0, s0.as_array(), 100 * T, rtol=1e-12, atol=1e-12,
           on_step=hook)
    return worst[0] <= 1e-10, f"max |H - H0| = {worst[0]:.2e} over 100 periods (T'={T:.6f})"


def shoulder_golden_numbers():
    steep = shoulder.PiecewiseParabolaScenario(1.0, -1.0, 2.0)
    shallow = shoulder.PiecewiseParabolaScenario(1.0, -1.0, 1.4)
    t_exact = shoulder.pp_shock_time(steep)
    t_grid = shoulder.earliest_shock(shoulder.build_chart(steep))
    t_sh = shoulder.pp_shock_time(shallow)
    t_c = shoulder.pp_coalescence_time(shallow)
    rho = shoulder.critical_ratio()
    ok = (abs(t_exact - 2 / 3) <= 1e-15 and abs(t_grid - t_exact) <= 1e-10
          and abs(t_sh - 1.054) <= 5e-3 and abs(t_c - 0.672) <= 5e-3 and abs(rho - 0.6213) <= 5e-4)
    return ok, (f"t_sh={t_exact:.16g} (grid diff {abs(t_grid - t_exact):.1e}), "
                f"t_sh(1.4)={t_sh:.6f}, t_c(1.4)={t_c:.6f}, critical ratio={rho:.7f}")


def _table_rows(X, u, eta, b):
    """Table rows n = 0..3 written out term by term (eta[4] = 0)."""
    u0, u1, u2, u3 = u
    _, e1, e2, e3 = eta
    e4 = 0.0
    _, b1, b2, b3, b4 = b
    udot = [-(b1 + e1),
            -(2 * b2 + u1 ** 2 + 2 * e2),
            -(3 * b3 + 3 * u1 * u2 + 3 * e3),
            -(4 * b4 + 2 * u2 ** 2 + 4 * u1 * u3 + 4 * e4)]
    edot = [0.0,
            -2 * u1 * e1,
            -(3 * u2 * e1 + 3 * u1 * e2),
            -(4 * u3 * e1 + 4 * u2 * e2 + 4 * u1 * e3)]
    return np.array(udot), np.array(edot)


def table_identity():
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for _ in range(1000):
        profile = BottomProfile.polynomial(rng.uniform(-1, 1, 5))
        X = rng.uniform(-1, 1)
        u = rng.uniform(-1, 1, 4)
        eta = np.concatenate([[0.0], [-abs(rng.uniform(0.1, 1))], rng.uniform(-1, 1, 2)])
        s = hierarchy.vacuum_front("physical", X, u, eta)
        xd, ud, ed, _ = hierarchy.hierarchy_rhs_vacuum(s, profile)
        ru, re = _table_rows(X, u, eta, taylor_coeffs(profile, X, 4))
        scale = 1.0 + np.max(np.abs(np.concatenate([ru, re])))
        worst = max(worst, np.max(np.abs(ud - ru)) / scale, np.max(np.abs(ed - re)) / scale,
                    abs(xd - u[0]))
    return worst <= 1e-13, f"max deviation {worst:.2e} over 1000 random states"


def exact_truncation():
    c0, c1, c2 = -1.0, 0.0, 2.0  # b = c0 + c1 x + c2 x^2 / 2
    profile = BottomProfile.quadratic(c0, c1, c2 / 2)
    s0 = selfsim.selfsim_to_series(selfsim.ParabolicState(0.3, -4.0, 1.0, -0.5, 0.2), order=4)
    s0.u_dry = None  # the fictitious dry-side velocity is not part of this check
    tail = [0.0]
    mismatch = [0.0]

    def hook(t, s, ds):
        tail[0] = max(tail[0], np.max(np.abs(s.u[2:])), np.max(np.abs(s.h[3:])))
        ref = hierarchy.quadratic_truncation_rhs(s.X, s.u[0], s.h[1], s.h[2], s.u[1], c1, c2)
        got = (ds.X, ds.u[0], ds.h[1], ds.h[2], ds.u[1])
        mismatch[0] = max(mismatch[0], max(abs(a - b) for a, b in zip(got, ref)))

    hierarchy.integrate_vacuum(s0, profile, 10.0, 1e-11, hook)
    ok = tail[0] <= 1e-14 and mismatch[0] <= 1e-12
    return ok, f"max tail {tail[0]:.1e}, retained-RHS mismatch {mismatch[0]:.1e}"


def _run_pair(profile, X, u, eta, times):
    s = hierarchy.vacuum_front("nonphysical", X, u, eta)
    # separate adaptive runs: the defect measures integration error, so run tight
    traj, _ = hierarchy.integrate_vacuum(s, profile, times[-1], 1e-13)
    ys = np.array([traj(t) for t in times])
    N = 3
    return ys[:, 3], ys[:, N + 2 + 2], ys[:, N + 2]   # u2, eta3, eta1


def eta1_linearity():
    # nearly flat cubic bottom: the leading pair stays bounded on [0, 10]
    # while b_3 makes the (u2, eta3) system affine rather than homogeneous
    profile = BottomProfile.polynomial([-1.0, 0.01, 0.0, 0.002])
    X = 0.1
    times = np.linspace(0.0, 10.0, 101)
    base_u = np.array([0.2, 1.0, 0.0, 0.05])
    base_eta = np.array([0.0, 0.0, 0.005, 0.0])
    A = (0.07, -0.02)
    B = (-0.03, 0.05)

    def solve(pair):
        u = base_u.copy()
        eta = base_eta.copy()
        u[2], eta[3] = pair
        return _run_pair(profile, X, u, eta, times)

    zero = solve((0.0, 0.0))
    a, b, ab = solve(A), solve(B), solve((A[0] + B[0], A[1] + B[1]))
    eta1_max = max(np.max(np.abs(r[2])) for r in (zero, a, b, ab))
    sup = max(np.max(np.abs(ab[k] - a[k] - b[k] + zero[k])) for k in (0, 1))
    ok = eta1_max <= 1e-12 and sup <= 1e-10
    return ok, f"max |eta1| {eta1_max:.1e}, superposition defect {sup:.1e}"


def half_slope_rule():
    sc = shoulder.PiecewiseParabolaScenario(1.0, -1.0, 2.0)
    chart = shoulder.build_chart(sc, 256)
    t = 0.02
    rs = refsolver.RefScenario(BottomProfile.flat(sc.Q), sc.eta_initial, lambda x: 0 * x, 0.0, 2.0)
    g = refsolver.run(rs, t, 4000).snapshots[-1]
    xl, xr = chart.left_boundary(t), chart.right(t)
    w = xr - xl
    m = (g.x > xl + 0.25 * w) & (g.x < xr - 0.25 * w)
    measured = np.polyfit(g.x[m], g.h[m], 1)[0]
    expected = sc.gamma0 * sc.x0   # half of eta_in'(x0) = 2 gamma0 x0
    rel = abs(measured - expected) / abs(expected)
    return rel <= 0.1, f"measured {measured:.5f} vs {expected:.5f} (rel {rel:.3f}, {m.sum()} cells)"


def oracle_cross_validation():
    s0 = selfsim.ParabolicState(0.0, -7.0, 1.0, -1.0, 0.0)
    P = BottomProfile.parabolic()

    def eta0(x):
        return np.maximum(selfsim.reconstruct_fields(s0, x)[0], 0.0)

    def u0(x):
        e, u = selfsim.reconstruct_fields(s0, x)
        return np.where(e > 0, u, 0.0)

    t0 = time.perf_counter()
    g = refsolver.run(refsolver.RefScenario(P, eta0, u0, -1.8, 2.0), 1.0, 2000).snapshots[-1]
    slosh_s = time.perf_counter() - t0
    s1 = selfsim.integrate_parabolic(s0, 1.0, 1e-12).state(1.0)
    slosh_err = float(np.max(np.abs(g.h - np.maximum(selfsim.reconstruct_fields(s1, g.x)[0], 0.0))))

    sc = shoulder.PiecewiseParabolaScenario(1.0, -1.0, 2.0)
    chart = shoulder.build_chart(sc, 256)
    times = list(np.linspace(0.05, 0.6, 12))
    rs = refsolver.RefScenario(BottomProfile.flat(sc.Q), sc.eta_initial, lambda x: 0 * x, 0.0, 2.2)
    traj = refsolver.run(rs, times[-1], 4000, times)
    chart_err = 0.0
    for snap in traj.snapshots[1:]:
        xl = chart.left_boundary(snap.t)
        s = shoulder.pp_sigma_of_time(sc.gamma0, snap.t)
        _, ga, mu = shoulder.pp_core_state(sc.gamma0, sc.mu0, s)
        chart_err = max(chart_err, abs(np.interp(xl, snap.x, snap.h) - (ga * xl * xl + mu)))
    ok = slosh_err <= 2e-2 and slosh_s <= 30 and chart_err <= 2e-2
    return ok, (f"slosh L_inf {slosh_err:.2e} in {slosh_s:.1f} s, "
                f"chart vs finite volume along left boundary {chart_err:.2e}")


def velocity_jump_law():
    s0 = selfsim.selfsim_to_series(selfsim.ParabolicState(0.0, -3.0, 1.0, 0.0, 0.0), order=3)
    profile = BottomProfile.parabolic()
    worst = [0.0]
    jumps = []

    def hook(t, s, ds):
        worst[0] = max(worst[0], abs((ds.u_dry[0] - ds.u[0]) - s.h[1]))
        jumps.append((t, s.jump))

    hierarchy.integrate_vacuum(s0, profile, 1.0, 1e-10, hook)
    nonzero = all(j != 0.0 for t, j in jumps if t > 0)
    ok = worst[0] <= 1e-10 and nonzero and abs(jumps[0][1]) == 0.0
    return ok, f"max |d[u]/dt - eta1| {worst[0]:.1e}, jump nonzero on (0,1]: {nonzero}"


def shock_position_asymptotics():
    profile = BottomProfile.parabolic()
    zeta1 = -0.5
    ratios = [(1 - hierarchy.shock_position(profile, x0, zeta1)) / (1 - x0) for x0 in (0.9, 0.99, 0.999)]
    spread = (max(ratios) - min(ratios)) / min(ratios)
    return spread <= 0.05, f"ratios {', '.join(f'{r:.5f}' for r in ratios)} (spread {spread:.2%})"


CRITERIA = [
    (1, "period endpoints", period_endpoints),
    (2, "elliptic vs quadrature", elliptic_vs_quadrature),
    (3, "blow-up asymptotics", blowup_asymptotics),
    (4, "Hamiltonian conservation", hamiltonian_conservation),
    (5, "piecewise-parabola golden numbers", shoulder_golden_numbers),
    (6, "vacuum hierarchy table identity", table_identity),
    (7, "exact truncation on a quadratic bottom", exact_truncation),
    (8, "eta1 preservation and linearity", eta1_linearity),
    (9, "half-slope rule", half_slope_rule),
    (10, "oracle cross-validation", oracle_cross_validation),
    (11, "velocity-jump law", velocity_jump_law),
    (12, "shock-position asymptotics", shock_position_asymptotics),
]


def run_criterion(number) -> CriterionResult:
    for n, name, fn in CRITERIA:
        if n == number:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failure, reported with its cause
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(n, name, bool(ok), detail, time.perf_counter() - t0)
    raise KeyError(number)


def run_all(stream=sys.stdout, numbers=None):
    results = []
    for n, _, _ in CRITERIA:
        if numbers is not None and n not in numbers:
            continue
        r = run_criterion(n)
        results.append(r)
        if stream is not None:
            print(r.line(), file=stream, flush=True)
    return results
