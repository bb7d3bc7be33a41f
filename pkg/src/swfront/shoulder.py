"""Simple-wave shoulders over a flat bottom ``b = -Q``.

A corner in still-water data splits into two characteristics.  Between
them the Riemann invariant ``u - 2 sqrt(eta)`` keeps its background value
``-2 sqrt(Q)``, so the region is a simple wave: along each positive
characteristic, labelled by the time ``t0`` at which it leaves the left
boundary ``X_l``, depth ``N`` and velocity ``V`` are frozen and the
characteristic is the straight line

    x = X_l(t0) + (3 sqrt(N(t0)) - 2 sqrt(Q)) (t - t0).

Neighbouring characteristics cross at

    tau(t0) = t0 + (3 sqrt(N) - 2 sqrt(Q) - X_l'(t0)) / (3 d sqrt(N)/dt0).

The piecewise-parabola case (a parabolic core ``gamma0 (x^2 - x0^2) + Q``
between two flat shelves) has everything in closed form through
``sigma = (gamma/gamma0)^(1/3)``, which runs from 1 down to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import DomainError

ARTANH_CLAMP = 1.0 - 1e-15
CHART_LABELS = 2048


def _artanh(v):
    v = min(v, ARTANH_CLAMP)
    return 0.5 * math.log((1.0 + v) / (1.0 - v))


@dataclass(frozen=True)
class PiecewiseParabolaScenario:
    Q: float
    gamma0: float
    mu0: float

    def __post_init__(self):
        errors = []
        if not self.Q > 0:
            errors.append("background depth Q must be positive")
        if not self.gamma0 < 0:
            errors.append("core curvature gamma0 must be negative")
        if not self.mu0 > self.Q:
            errors.append("corner must be wet (mu0 > Q)")
        if errors:
            raise DomainError("; ".join(errors))

    @property
    def x0(self):
        return math.sqrt((self.mu0 - self.Q) / -self.gamma0)

    @property
    def rate(self):
        """``sqrt(|gamma0|)``, the time scale of the core."""
        return math.sqrt(-self.gamma0)

    @property
    def sigma_c(self):
        return self.Q / self.mu0

    def eta_initial(self, x):
        x = np.asarray(x, dtype=float)
        core = self.gamma0 * (x * x - self.x0**2) + self.Q
        return np.where(np.abs(x) <= self.x0, core, self.Q)


# --- closed forms for the parabolic core ----------------------------------------

def pp_time_of_sigma(gamma0, sigma):
    """Time at which the core reaches ``sigma``; ``t(1) = 0``, ``t -> inf`` as ``sigma -> 0``."""
    if not (0.0 < sigma <= 1.0):
        raise DomainError(f"sigma={sigma} outside (0, 1]")
    if sigma == 1.0:
        return 0.0
    r = math.sqrt(1.0 - sigma)
    return (r + sigma * _artanh(r)) / (2.0 * math.sqrt(abs(gamma0)) * sigma)


def pp_sigma_of_time(gamma0, t):
    """Inverse of :func:`pp_time_of_sigma` by bracketed root finding."""
    if t < 0:
        raise DomainError("time must be nonnegative")
    if t == 0:
        return 1.0
    lo = 0.5
    while pp_time_of_sigma(gamma0, lo) < t:
        lo *= 0.5
    return optimize.brentq(lambda s: pp_time_of_sigma(gamma0, s) - t, lo, 1.0,
                           xtol=1e-16, rtol=1e-15, maxiter=500)


def pp_sigma_rate(gamma0, sigma):
    """``d sigma / dt``."""
    return -2.0 * math.sqrt(abs(gamma0)) * sigma * sigma * math.sqrt(max(0.0, 1.0 - sigma))


def pp_core_state(gamma0, mu0, sigma):
    """``(alpha, gamma, mu)`` of the flat-bottom parabolic core at ``sigma``."""
    if not (0.0 < sigma <= 1.0):
        raise DomainError(f"sigma={sigma} outside (0, 1]")
    a = math.sqrt(abs(gamma0))
    return 2.0 * a * sigma * math.sqrt(1.0 - sigma), gamma0 * sigma**3, mu0 * sigma


def pp_left_front(sc: PiecewiseParabolaScenario, sigma):
    """Left boundary of the shoulder while the core is present (``sigma_c <= sigma <= 1``)."""
    if sigma < sc.sigma_c * (1 - 1e-14) or sigma > 1.0:
        raise DomainError(f"sigma={sigma} outside [{sc.sigma_c}, 1]")
    m = sc.mu0 - sc.Q
    return (math.sqrt(m * sigma) - math.sqrt(sc.Q * max(0.0, 1.0 - sigma))) / (sc.rate * sigma)


def pp_shock_time(sc: PiecewiseParabolaScenario):
    """Closed-form earliest shoulder shock, attained on the label ``sigma0 = 1``."""
    return (2.0 / 3.0) * math.sqrt(sc.Q / (-sc.gamma0 * (sc.mu0 - sc.Q)))


def pp_coalescence_time(sc: PiecewiseParabolaScenario):
    return pp_time_of_sigma(sc.gamma0, sc.sigma_c)


def _shock_minus_coalescence(ratio):
    # both times scale with 1/sqrt(|gamma0|); work at gamma0 = -1
    t_sh = (2.0 / 3.0) * math.sqrt(ratio / (1.0 - ratio))
    return t_sh - pp_time_of_sigma(-1.0, ratio)


def critical_ratio():
    """``Q/mu0`` at which shock and coalescence happen together."""
    return optimize.brentq(_shock_minus_coalescence, 1e-6, 1 - 1e-9, xtol=1e-15, rtol=1e-15)


@dataclass(frozen=True)
class PPRegime:
    kind: str  # "ShockBeforeCoalescence" or "CoalescenceBeforeShock"
    t_sh: float
    t_c: float
    critical_ratio: float


def pp_regime(sc: PiecewiseParabolaScenario):
    ratio = sc.Q / sc.mu0
    if not (0.0 < ratio < 1.0):
        raise DomainError("Q/mu0 must lie in (0, 1)")
    t_sh = pp_shock_time(sc)
    t_c = pp_coalescence_time(sc)
    kind = "ShockBeforeCoalescence" if t_sh <= t_c else "CoalescenceBeforeShock"
    return PPRegime(kind, t_sh, t_c, critical_ratio())


# --- general shoulder charts -----------------------------------------------------

@dataclass
class ShoulderChart:
    """Simple-wave shoulder described through its characteristic labels.

    The chart is defined by callables of the label ``t0``: ``sqrt_depth``
    (``sqrt N``), ``sqrt_depth_rate`` (its ``t0`` derivative), ``left`` and
    ``left_speed`` (the left boundary and its velocity).  ``t0_max`` is
    the last label leaving the left boundary with a varying state (the
    coalescence time for the piecewise parabola, ``inf`` otherwise).
    ``labels``, ``N``, ``V``, ``X_left``, ``X_right`` are samples on the
    label grid; ``right`` gives the right boundary path.
    """

    Q: float
    sqrt_depth: callable
    sqrt_depth_rate: callable
    left: callable
    left_speed: callable
    right: callable
    t0_max: float = math.inf
    labels: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sigma: np.ndarray = field(default_factory=lambda: np.zeros(0))
    N: np.ndarray = field(default_factory=lambda: np.zeros(0))
    V: np.ndarray = field(default_factory=lambda: np.zeros(0))
    X_left: np.ndarray = field(default_factory=lambda: np.zeros(0))
    X_right: np.ndarray = field(default_factory=lambda: np.zeros(0))
    scenario: PiecewiseParabolaScenario | None = None

    def depth(self, t0):
        return self.sqrt_depth(t0) ** 2

    def velocity(self, t0):
        return 2.0 * self.sqrt_depth(t0) - 2.0 * math.sqrt(self.Q)

    def left_boundary(self, t):
        """Left boundary at time ``t``, continued as a straight characteristic after ``t0_max``."""
        if t <= self.t0_max:
            return self.left(t)
        return self.left(self.t0_max) + math.sqrt(self.Q) * (t - self.t0_max)


def char_map(chart: ShoulderChart, t0, tau):
    """Position at time ``tau`` of the characteristic labelled ``t0``."""
    if not 0 <= t0 <= tau:
        raise DomainError("need 0 <= t0 <= tau")
    return chart.left(t0) + (3.0 * chart.sqrt_depth(t0) - 2.0 * math.sqrt(chart.Q)) * (tau - t0)


def shock_time_of_char(chart: ShoulderChart, t0):
    """Crossing time of the characteristic ``t0`` with its neighbours; ``inf`` if they never cross."""
    rate = chart.sqrt_depth_rate(t0)
    if rate == 0.0:
        return math.inf
    return t0 + (3.0 * chart.sqrt_depth(t0) - 2.0 * math.sqrt(chart.Q)
                 - chart.left_speed(t0)) / (3.0 * rate)


def shoulder_slope(chart: ShoulderChart, t0, tau):
    """Surface slope ``N_x`` at chart point ``(t0, tau)``."""
    sq = chart.sqrt_depth(t0)
    rate = chart.sqrt_depth_rate(t0)
    x_t0 = chart.left_speed(t0) + 3.0 * rate * (tau - t0) - 3.0 * sq + 2.0 * math.sqrt(chart.Q)
    return 2.0 * sq * rate / x_t0


def _admissible(chart, t0, tau, slack=1e-9):
    if not (math.isfinite(tau) and tau >= t0):
        return False
    x = char_map(chart, t0, tau)
    lo = chart.left_boundary(tau)
    hi = chart.right(tau)
    return lo - slack <= x <= hi + slack


def earliest_shock(chart: ShoulderChart, labels=None):
    """Earliest admissible crossing time over the chart labels, or ``None`` when open.

    The grid minimum is refined by a bounded scalar minimization between
    its neighbours.
    """
    if chart.scenario is not None and labels is None:
        return _pp_earliest_shock(chart)
    t0s = chart.labels if labels is None else np.asarray(labels)
    if t0s.size == 0:
        return None
    taus = np.array([shock_time_of_char(chart, t0) for t0 in t0s])
    ok = np.array([_admissible(chart, t0, tau) for t0, tau in zip(t0s, taus)])
    if not ok.any():
        return None
    idx = np.flatnonzero(ok)
    i = idx[np.argmin(taus[idx])]
    best = taus[i]
    lo = t0s[max(i - 1, 0)]
    hi = t0s[min(i + 1, len(t0s) - 1)]
    lo, hi = min(lo, hi), max(lo, hi)
    if hi > lo:
        res = optimize.minimize_scalar(lambda s: shock_time_of_char(chart, s),
                                       bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-14})
        if res.success and res.fun < best and _admissible(chart, res.x, res.fun):
            best = float(res.fun)
    return float(best)


def constant_chart(Q, x0=0.0):
    """Chart of quiescent data: uniform depth, no compression anywhere."""
    sq = math.sqrt(Q)
    labels = np.linspace(0.0, 1.0, 16)
    return ShoulderChart(
        Q=Q, sqrt_depth=lambda t0: sq, sqrt_depth_rate=lambda t0: 0.0,
        left=lambda t0: x0 - sq * t0, left_speed=lambda t0: -sq,
        right=lambda t: x0 + sq * t, labels=labels, sigma=np.ones_like(labels),
        N=np.full_like(labels, Q), V=np.zeros_like(labels),
        X_left=x0 - sq * labels, X_right=x0 + sq * labels)


def _label_grid(sigma_c, n):
    # cosine clustering towards sigma0 = 1; both ends included exactly
    theta = np.linspace(0.0, math.pi / 2, n)
    s = 1.0 - (1.0 - sigma_c) * (1.0 - np.cos(theta))
    s[0], s[-1] = 1.0, sigma_c
    return s


def build_chart(sc: PiecewiseParabolaScenario, n_labels=CHART_LABELS):
    """Shoulder chart of the piecewise-parabola scenario on a ``sigma0`` grid from 1 to ``sigma_c``."""
    Q, g0, a = sc.Q, sc.gamma0, sc.rate
    m = sc.mu0 - Q
    sqQ = math.sqrt(Q)
    t_c = pp_coalescence_time(sc)

    def sig(t0):
        return pp_sigma_of_time(g0, min(t0, t_c)) if t0 < t_c else sc.sigma_c

    def sqrt_n_sigma(s):
        return math.sqrt(m * s * max(0.0, 1.0 - s)) + sqQ * s

    def sqrt_n_rate_sigma(s):
        return (-a * s**1.5 * math.sqrt(m) * (1.0 - 2.0 * s)
                - 2.0 * a * sqQ * s * s * math.sqrt(max(0.0, 1.0 - s)))

    def sqrt_depth(t0):
        return sqrt_n_sigma(sig(t0)) if t0 < t_c else sqQ

    def sqrt_depth_rate(t0):
        return sqrt_n_rate_sigma(sig(t0)) if t0 < t_c else 0.0

    def left(t0):
        if t0 >= t_c:
            return sqQ * (t0 - t_c)
        return pp_left_front(sc, sig(t0))

    def left_speed(t0):
        return sqrt_depth(t0) - 2.0 * sqQ if t0 < t_c else sqQ

    sigmas = _label_grid(sc.sigma_c, n_labels)
    labels = np.array([pp_time_of_sigma(g0, s) for s in sigmas])
    labels[-1] = t_c
    sqN = np.array([sqrt_n_sigma(s) for s in sigmas])
    sqN[-1] = sqQ  # exact hydrostatic value at coalescence
    N = sqN**2
    V = 2.0 * sqN - 2.0 * sqQ
    Xl = np.array([pp_left_front(sc, s) for s in sigmas])
    Xl[-1] = 0.0
    Xr = sc.x0 + sqQ * labels
    chart = ShoulderChart(Q=Q, sqrt_depth=sqrt_depth, sqrt_depth_rate=sqrt_depth_rate,
                          left=left, left_speed=left_speed, right=lambda t: sc.x0 + sqQ * t,
                          t0_max=t_c, labels=labels, sigma=sigmas, N=N, V=V,
                          X_left=Xl, X_right=Xr, scenario=sc)
    return chart


def _shock_time_sigma(sc, s):
    """Crossing time for the label ``sigma0 = s``, straight from the closed forms."""
    Q, a = sc.Q, sc.rate
    m = sc.mu0 - Q
    sqN = math.sqrt(m * s * max(0.0, 1.0 - s)) + math.sqrt(Q) * s
    rate = (-a * s**1.5 * math.sqrt(m) * (1.0 - 2.0 * s)
            - 2.0 * a * math.sqrt(Q) * s * s * math.sqrt(max(0.0, 1.0 - s)))
    if rate == 0.0:
        return math.inf
    return pp_time_of_sigma(sc.gamma0, s) + 2.0 * sqN / (3.0 * rate)


def _pp_earliest_shock(chart):
    # labels are searched in sigma0, where the closed forms are explicit
    sc = chart.scenario
    best = None
    best_i = None
    for i, s in enumerate(chart.sigma):
        tau = _shock_time_sigma(sc, s)
        t0 = chart.labels[i]
        if _admissible(chart, t0, tau) and (best is None or tau < best):
            best, best_i = tau, i
    if best is None:
        return None
    s = chart.sigma
    lo = s[min(best_i + 1, len(s) - 1)]
    hi = s[max(best_i - 1, 0)]
    if hi > lo:
        res = optimize.minimize_scalar(lambda v: _shock_time_sigma(sc, v), bounds=(lo, hi),
                                       method="bounded", options={"xatol": 1e-14})
        t0 = pp_time_of_sigma(sc.gamma0, res.x)
        if res.success and res.fun < best and _admissible(chart, t0, res.fun):
            best = float(res.fun)
    return float(best)


# --- field evaluation -------------------------------------------------------------

def pp_fields(sc: PiecewiseParabolaScenario, x, t, chart: ShoulderChart | None = None):
    """Exact ``(eta, u)`` of the piecewise-parabola problem before the shoulder shock.

    Valid for ``t`` below the earliest shock; symmetric about ``x = 0``.
    """
    if chart is None:
        chart = build_chart(sc, 64)
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    sgn = np.where(x < 0, -1.0, 1.0)
    eta = np.full_like(ax, sc.Q)
    u = np.zeros_like(ax)
    t_c = chart.t0_max
    Xl = chart.left_boundary(t)
    Xr = chart.right(t)
    if t < t_c:
        s = pp_sigma_of_time(sc.gamma0, t) if t > 0 else 1.0
        al, ga, mu = pp_core_state(sc.gamma0, sc.mu0, s)
        core = ax <= Xl
        eta[core] = ga * ax[core] ** 2 + mu
        u[core] = al * ax[core]
    shoulder = (ax > Xl) & (ax < Xr)
    sqQ = math.sqrt(sc.Q)
    for i in np.flatnonzero(shoulder):
        xi = ax[i]
        # label of the characteristic through (xi, t); position is monotone in t0 before the shock
        f = lambda t0: char_map(chart, t0, t) - xi
        hi = min(t, t_c)
        if f(hi) >= 0:
            # past the last varying label: hydrostatic region behind the reflected front
            continue
        t0 = optimize.brentq(f, 0.0, hi, xtol=1e-14, rtol=1e-15)
        sq = chart.sqrt_depth(t0)
        eta[i] = sq * sq
        u[i] = 2.0 * sq - 2.0 * sqQ
    return eta, sgn * u
