"""Scenario runners: turn a validated config into data tables and derived numbers.

Nothing here touches the file system; :mod:`swfront.cli` writes the
tables and :mod:`swfront.plotting` draws figures from the tables alone, so
every plotted number can be recovered from the data files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import hierarchy, refsolver, selfsim, shoulder
from .bathymetry import BottomProfile
from .config import ScenarioConfig
from .errors import BlowUpError, DomainError
from .tables import Table

PARABOLIC = BottomProfile.parabolic()


@dataclass
class ScenarioResult:
    kind: str
    tables: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)

    def summary_table(self):
        """Numeric derived quantities as a two-column table."""
        names, values = [], []
        for k, v in self.derived.items():
            if isinstance(v, (int, float)) and not isinstance(v, bool) and v is not None:
                names.append(k)
                values.append(float(v))
        return Table({"quantity": names, "value": values})


def _profile_rows(times, x, fields_at, bottom):
    """Long-format table ``t, x, eta, u, b, zeta`` for each time in ``times``."""
    cols = {k: [] for k in ("t", "x", "eta", "u", "b", "zeta")}
    b = bottom.eval(x) * np.ones_like(x)
    for t in times:
        eta, u = fields_at(t, x)
        cols["t"].append(np.full_like(x, t))
        cols["x"].append(x)
        cols["eta"].append(eta)
        cols["u"].append(u)
        cols["b"].append(b)
        cols["zeta"].append(eta + b)
    return Table({k: np.concatenate(v) for k, v in cols.items()})


def _grid_rows(traj: refsolver.RefTrajectory):
    cols = {k: [] for k in ("t", "x", "eta", "u", "b", "zeta")}
    for g in traj.snapshots:
        data = g.columns()
        cols["t"].append(np.full(g.x.size, g.t))
        for j, k in enumerate(("x", "eta", "u", "b", "zeta")):
            cols[k].append(data[:, j])
    return Table({k: np.concatenate(v) for k, v in cols.items()})


# --- parabolic self-similar scenarios ---------------------------------------------

def _parabolic_fields(traj):
    def fields(t, x):
        s = traj.state(t)
        eta, u = selfsim.reconstruct_fields(s, x)
        wet = eta > 0
        return np.where(wet, eta, 0.0), np.where(wet, u, np.nan)
    return fields


def _param_table(traj, t_end, n):
    ts = np.linspace(0.0, t_end, n)
    ys = np.array([traj.traj(t) for t in ts])
    H = selfsim.invariant_H(ys[:, 0], ys[:, 1])
    return Table({"t": ts, "alpha": ys[:, 0], "gamma": ys[:, 1], "mu": ys[:, 2],
                  "beta": ys[:, 3], "delta": ys[:, 4], "H": np.asarray(H, dtype=float)})


def run_slosh(cfg: ScenarioConfig) -> ScenarioResult:
    ini, num = cfg.initial, cfg.numerics
    s0 = selfsim.ParabolicState(ini["alpha0"], ini["gamma0"], ini["mu0"], ini["beta0"], ini["delta0"])
    regime = selfsim.classify(s0.gamma, s0.alpha)
    times = list(num["output_times"])
    t_end = num["t_end"] or max(times[-1] if times else 0.0, regime.period or 0.0)
    times = [t for t in times if t <= t_end]
    traj = selfsim.integrate_parabolic(s0, t_end, num["tol"])
    res = ScenarioResult("slosh")
    res.derived.update(regime=regime.kind, energy=regime.energy, period=regime.period,
                       t_end=t_end, steps=len(traj.t) - 1)
    params = _param_table(traj, t_end, num["points"])
    res.tables["parameters"] = params
    # measured on accepted steps; the sampled table also carries dense-output error
    ys = traj.traj.y
    res.derived["H_drift"] = float(np.max(np.abs(selfsim.invariant_H(ys[:, 0], ys[:, 1]) - params["H"][0])))
    # plotting window: the wet interval over the whole run, padded
    lo, hi = math.inf, -math.inf
    for t in np.linspace(0, t_end, 400):
        vp = selfsim.vacuum_points(traj.state(t))
        lo, hi = min(lo, vp[0]), max(hi, vp[1])
    pad = 0.1 * (hi - lo)
    x = np.linspace(lo - pad, hi + pad, num["points"])
    res.tables["profiles"] = _profile_rows(times, x, _parabolic_fields(traj), PARABOLIC)
    if num["resolution"]:
        def eta0(xx):
            return np.maximum(selfsim.reconstruct_fields(s0, xx)[0], 0.0)

        def u0(xx):
            eta, u = selfsim.reconstruct_fields(s0, xx)
            return np.where(eta > 0, u, 0.0)

        sc = refsolver.RefScenario(PARABOLIC, eta0, u0, lo - pad, hi + pad)
        ref = refsolver.run(sc, t_end, num["resolution"], times, num["cfl"], num["order"])
        res.tables["refsolver"] = _grid_rows(ref)
        errs = []
        for g in ref.snapshots:
            exact = np.maximum(selfsim.reconstruct_fields(traj.state(g.t), g.x)[0], 0.0)
            errs.append(float(np.max(np.abs(g.h - exact))))
        res.tables["refsolver_error"] = Table({"t": np.array([g.t for g in ref.snapshots]),
                                               "linf_eta": np.array(errs)})
        res.derived.update(refsolver_linf_max=max(errs), refsolver_mass_drift=ref.diagnostics["mass_drift"])
    return res


def run_blowup(cfg: ScenarioConfig) -> ScenarioResult:
    ini, num = cfg.initial, cfg.numerics
    s0 = selfsim.ParabolicState(ini["alpha0"], ini["gamma0"], ini["mu0"], ini["beta0"], ini["delta0"])
    regime = selfsim.classify(s0.gamma, s0.alpha)
    t_bu = regime.blowup_time
    res = ScenarioResult("blowup")
    res.derived.update(regime=regime.kind, energy=regime.energy, blowup_time=t_bu)
    t_stop = 0.99 * t_bu
    traj = selfsim.integrate_parabolic(s0, t_stop, num["tol"])
    try:
        selfsim.integrate_parabolic(s0, 2.0 * t_bu, num["tol"])
    except BlowUpError as exc:
        res.derived["blowup_time_detected"] = exc.time
    else:
        raise BlowUpError(f"no blow-up found before t={2 * t_bu}", 2 * t_bu)
    times = num["output_times"]
    if times is None:
        times = [f * t_bu for f in (0.0, 0.25, 0.5, 0.75, 0.9, 0.95)]
    times = [t for t in times if t <= t_stop]
    res.tables["parameters"] = _param_table(traj, t_stop, num["points"])
    x = np.linspace(s0.beta - 2.0, s0.beta + 2.0, num["points"])
    res.tables["profiles"] = _profile_rows(times, x, _parabolic_fields(traj), PARABOLIC)
    return res


# --- piecewise-parabola shoulder scenarios ------------------------------------------

def _pp_domain(sc, t_end):
    return sc.x0 + math.sqrt(sc.Q) * 1.3 * t_end + 0.3


def run_pw_flat(cfg: ScenarioConfig) -> ScenarioResult:
    ini, num = cfg.initial, cfg.numerics
    sc = shoulder.PiecewiseParabolaScenario(ini["Q"], ini["gamma0"], ini["mu0"])
    reg = shoulder.pp_regime(sc)
    chart = shoulder.build_chart(sc, num["labels"])
    t_shock_grid = shoulder.earliest_shock(chart)
    res = ScenarioResult("pw-parabola-flat")
    res.derived.update(regime=reg.kind, shock_time=reg.t_sh, coalescence_time=reg.t_c,
                       critical_ratio=reg.critical_ratio, ratio=sc.Q / sc.mu0,
                       shock_time_chart=t_shock_grid, x0=sc.x0,
                       shoulder_half_slope=sc.gamma0 * sc.x0)
    t_valid = min(reg.t_sh, reg.t_c)
    times = num["output_times"]
    if times is None:
        times = [f * t_valid for f in (0.0, 0.25, 0.5, 0.75, 0.95)]
    exact_times = [t for t in times if t < t_valid]
    res.tables["chart"] = Table({"label": chart.labels, "sigma": chart.sigma, "N": chart.N,
                                 "V": chart.V, "X_left": chart.X_left, "X_right": chart.X_right})
    ts = np.linspace(0.0, reg.t_sh, num["points"])
    res.tables["fronts"] = Table({"t": ts,
                                  "X_left": np.array([chart.left_boundary(t) for t in ts]),
                                  "X_right": np.array([chart.right(t) for t in ts])})
    L = _pp_domain(sc, max(reg.t_sh, times[-1] if times else 0.0))
    x = np.linspace(-L, L, num["points"])
    res.tables["profiles"] = _profile_rows(exact_times, x,
                                           lambda t, xx: shoulder.pp_fields(sc, xx, t, chart),
                                           BottomProfile.flat(sc.Q))
    if num["resolution"]:
        t_end = 1.3 * reg.t_sh
        rs = refsolver.RefScenario(BottomProfile.flat(sc.Q), sc.eta_initial, lambda xx: 0 * xx,
                                   0.0, _pp_domain(sc, t_end))
        fine = refsolver.run(rs, t_end, num["resolution"], times, num["cfl"], num["order"])
        coarse = refsolver.run(rs, t_end, num["resolution"] // 2, None, num["cfl"], num["order"])
        det = refsolver.detect_gradient_blowup(fine, num["threshold"], coarse)
        res.tables["refsolver"] = _grid_rows(fine)
        res.tables["slope_history"] = Table({"t": fine.slope_t, "max_slope": fine.slope_max})
        res.derived.update(refsolver_blowup=None if det is None else det.time,
                           refsolver_crossing=None if det is None else det.crossing,
                           refsolver_confirmed=None if det is None else det.confirmed)
    return res


def _left_surface(x0, slope):
    def zeta(x):
        x = np.asarray(x, dtype=float)
        return np.where(x < x0, slope * (x - x0), 0.0)
    return zeta


def run_pw_parabolic(cfg: ScenarioConfig) -> ScenarioResult:
    ini, num = cfg.initial, cfg.numerics
    profile = cfg.bottom
    x0, slope = ini["x0"], ini["zeta_slope"]
    t_end = num["t_end"]
    b0 = profile.eval(x0)
    zeta1_0, u1_0 = hierarchy.shoulder_initial_slope(slope, b0)
    right = hierarchy.still_front_path(profile, x0, 1, max(t_end, 1.0) * 50)
    res = ScenarioResult("pw-parabola-parabolic")
    res.derived.update(front_speed=math.sqrt(-b0), shoulder_slope=zeta1_0, shoulder_u1=u1_0,
                       front_path=right.label)
    t_cat = hierarchy.riccati_catastrophe_time(right, zeta1_0)
    res.derived["catastrophe_time"] = t_cat
    try:
        res.derived["shock_position"] = hierarchy.shock_position(profile, x0, zeta1_0)
    except hierarchy.NoCatastrophe:
        res.derived["shock_position"] = None
    t_path = min(t_end, right.t_max)
    ts = np.linspace(0.0, t_path, num["points"])
    res.tables["front"] = Table({"t": ts, "X_right": np.array([float(right.position(t)) for t in ts]),
                                 "speed": np.array([float(right.speed(t)) for t in ts])})
    zeta = _left_surface(x0, slope)
    xs_r = profile.shoreline(x0, 1) if profile.degree > 0 else None
    xs_l = profile.shoreline(x0, -1) if profile.degree > 0 else None
    hi = (xs_r + 0.5) if xs_r is not None else x0 + 2.0 * (1 + t_end)
    lo = (xs_l - 0.5 - abs(slope)) if xs_l is not None else x0 - 2.0 * (1 + t_end)
    times = num["output_times"] or [f * t_end for f in (0.0, 0.25, 0.5, 0.75, 1.0)]
    times = [t for t in times if t <= t_end]
    x = np.linspace(lo, hi, num["points"])
    res.tables["initial"] = Table({"x": x, "eta": np.maximum(zeta(x) - profile.eval(x), 0.0),
                                   "b": profile.eval(x) * np.ones_like(x)})
    if num["resolution"]:
        rs = refsolver.RefScenario(profile, lambda xx: np.maximum(zeta(xx) - profile.eval(xx), 0.0),
                                   lambda xx: 0 * xx, lo, hi)
        ref = refsolver.run(rs, t_end, num["resolution"], times, num["cfl"], num["order"])
        res.tables["refsolver"] = _grid_rows(ref)
        res.tables["slope_history"] = Table({"t": ref.slope_t, "max_slope": ref.slope_max})
        res.derived["refsolver_mass_drift"] = ref.diagnostics["mass_drift"]
    return res


# --- vacuum hierarchy --------------------------------------------------------------

def run_vacuum(cfg: ScenarioConfig) -> ScenarioResult:
    ini, num = cfg.initial, cfg.numerics
    s0 = hierarchy.vacuum_front(ini["kind"], ini["X0"], ini["u"], ini["eta"], 0.0, ini["u_dry"])
    rows = []
    worst = [0.0]

    def hook(t, s, ds):
        rows.append((t, s.X, *s.u, *s.h[1:], s.jump))
        if s.u_dry is not None:
            worst[0] = max(worst[0], abs((ds.u_dry[0] - ds.u[0]) - s.h[1]))

    hierarchy.integrate_vacuum(s0, cfg.bottom, num["t_end"], num["tol"], hook)
    N = s0.order
    names = ["t", "X"] + [f"u{k}" for k in range(N + 1)] + [f"eta{k}" for k in range(1, N + 1)] + ["jump"]
    data = np.array(rows)
    res = ScenarioResult("vacuum-hierarchy")
    res.tables["coefficients"] = Table({n: data[:, j] for j, n in enumerate(names)})
    res.derived.update(order=N, steps=len(rows) - 1, X_final=float(data[-1, 1]),
                       jump_final=float(data[-1, -1]), jump_law_residual=worst[0])
    return res


# --- curves ------------------------------------------------------------------------

def run_period_curve(cfg: ScenarioConfig) -> ScenarioResult:
    num = cfg.numerics
    g = np.linspace(num["gamma_min"], num["gamma_max"], num["points"])
    T = np.array([selfsim.period(v) for v in g])
    E = np.array([selfsim.slosh_energy(v) for v in g])
    res = ScenarioResult("period-curve")
    res.tables["curve"] = Table({"gamma0": g, "period": T, "energy": E})
    res.derived.update(period_first=float(T[0]), period_last=float(T[-1]),
                       limit_deep=math.pi * math.sqrt(2.0 / 3.0), limit_shallow=math.pi / math.sqrt(2.0),
                       monotone=bool(np.all(np.diff(T) < 0)))
    return res


def run_blowup_curve(cfg: ScenarioConfig) -> ScenarioResult:
    num = cfg.numerics
    g = np.geomspace(num["gamma_min"], num["gamma_max"], num["points"])
    T = np.array([selfsim.blowup_time(v) for v in g])
    res = ScenarioResult("blowup-curve")
    res.tables["curve"] = Table({"gamma0": g, "blowup_time": T,
                                 "small_gamma_limit": np.full_like(g, math.pi / 2 ** 1.5),
                                 "large_gamma_asymptote": math.pi / (4.0 * np.sqrt(g))})
    res.derived.update(blowup_first=float(T[0]), blowup_last=float(T[-1]))
    return res


RUNNERS = {
    "slosh": run_slosh,
    "blowup": run_blowup,
    "pw-parabola-flat": run_pw_flat,
    "pw-parabola-parabolic": run_pw_parabolic,
    "vacuum-hierarchy": run_vacuum,
    "period-curve": run_period_curve,
    "blowup-curve": run_blowup_curve,
}


def run_scenario(cfg: ScenarioConfig) -> ScenarioResult:
    if cfg.kind not in RUNNERS:
        raise DomainError(f"scenario {cfg.kind!r} has no runner")
    return RUNNERS[cfg.kind](cfg)
