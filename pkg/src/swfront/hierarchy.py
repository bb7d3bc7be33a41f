"""Series dynamics at moving fronts: still-water wavefronts and vacuum points.

Two coefficient hierarchies are implemented here.

Still water.  Behind a front ``X(t)`` advancing into quiescent fluid the
surface ``zeta`` and velocity ``u`` are expanded in ``xi = x - X``.  With
``w_n = zeta_n - Xdot u_n`` the hierarchy reads, for ``n >= 1``,

    zeta_n' = (n+1) Xdot w_{n+1} - (n+1) S^z_n
    u_n'    = -(n+1) w_{n+1}     - S^u_n

with ``S^z_n = sum_{k=1..n} (zeta_k - b_k) u_{n+1-k}`` and
``S^u_n = sum_{k=1..n} k u_k u_{n+1-k}``.  Eliminating ``w_{n+1}`` between
the two rows gives the characteristic constraint

    w_{n+1} = (w_n' + (n+1) S^z_n - Xdot S^u_n + Xddot u_n) / (2 (n+1) Xdot)

starting from ``w_1 = 0``.  Only ``X`` and ``u_1..u_N`` are independent;
the ``zeta_n`` follow.  The time derivatives ``w_n'`` are produced by
truncated Taylor series in time, so the order-N system carries no
truncation error.

Vacuum points.  At a dry point ``eta_0 = 0`` and ``Xdot = u_0``; the rows
are

    eta_n' = -(n+1) sum_{k=1..n} u_k eta_{n+1-k}
    u_n'   = -(n+1)(eta_{n+1} + b_{n+1}) - sum_{k=1..n} k u_k u_{n+1-k}

with ``u_0' = -(b_1 + eta_1)``, closed by dropping unknowns above order N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate, optimize

from .bathymetry import BottomProfile, taylor_coeffs
from .errors import BlowUpError, DomainError, GradientCatastrophe
from .integrate import dopri5

STILL = "still"
NONPHYSICAL = "nonphysical"
PHYSICAL = "physical"
KINDS = (STILL, NONPHYSICAL, PHYSICAL)


@dataclass
class FrontSeriesState:
    """Front position plus one-sided series coefficients.

    ``h`` holds ``zeta_k`` for still-water fronts and ``eta_k`` at vacuum
    points.  ``u_dry`` carries the velocity coefficients on the dry side of
    a physical vacuum point (``None`` otherwise).
    """

    kind: str
    X: float
    Xdot: float
    u: np.ndarray
    h: np.ndarray
    t: float = 0.0
    u_dry: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown front kind {self.kind!r}")
        self.u = np.asarray(self.u, dtype=float)
        self.h = np.asarray(self.h, dtype=float)
        if self.u.shape != self.h.shape or self.u.ndim != 1 or self.u.size < 2:
            raise DomainError("u and h must be 1-D arrays of equal length >= 2")
        if self.u_dry is not None:
            self.u_dry = np.asarray(self.u_dry, dtype=float)

    @property
    def order(self):
        return self.u.size - 1

    @property
    def jump(self):
        """Velocity jump ``u_dry[0] - u[0]`` across a physical vacuum point."""
        if self.u_dry is None:
            return 0.0
        return float(self.u_dry[0] - self.u[0])


@dataclass
class VelocityJump:
    t: np.ndarray
    jump: np.ndarray
    rate: np.ndarray


def front_speed(b0, direction=1):
    """Speed of a front running into still water where the bottom is ``b0``."""
    if b0 >= 0:
        raise DomainError(f"front sits at or beyond the shoreline (b0={b0})")
    return math.copysign(math.sqrt(-b0), direction)


# --- truncated power series in time ---------------------------------------
# arrays hold normalized Taylor coefficients f^(j)/j!

def _mul(a, b):
    return np.convolve(a, b)[: len(a)]


def _div(a, b):
    out = np.zeros_like(a)
    for j in range(len(a)):
        out[j] = (a[j] - np.dot(out[:j], b[j:0:-1])) / b[0]
    return out


def _deriv(a):
    out = np.zeros_like(a)
    out[:-1] = a[1:] * np.arange(1, len(a))
    return out


def _compose(coeffs, xs):
    """Series of ``p(X(t))`` for monomial coefficients ``coeffs``."""
    acc = np.zeros_like(xs)
    for c in reversed(coeffs):
        acc = _mul(acc, xs)
        acc[0] += c
    return acc


def _poly_deriv(coeffs, k):
    c = list(coeffs)
    for _ in range(k):
        c = [i * c[i] for i in range(1, len(c))] or [0.0]
    return c


def _position_series(profile, X, direction, L):
    """Taylor series of a still-water front path ``X(t)`` (length ``L``)."""
    xs = np.zeros(L)
    xs[0] = X
    if L > 1:
        xs[1] = front_speed(profile.eval(X), direction)
    slope = _poly_deriv(profile.coeffs, 1)
    for j in range(L - 2):
        # Xddot = -b'(X)/2, coefficient j only needs xs[0..j]
        acc = _compose(slope, xs)
        xs[j + 2] = -0.5 * acc[j] / ((j + 1) * (j + 2))
    return xs


def _still_jets(profile, X, direction, u):
    N = len(u) - 1
    L = N + 2
    xs = _position_series(profile, X, direction, L + 2)
    V = _deriv(xs)[:L]
    A = _deriv(_deriv(xs))[:L]
    B = [None] + [
        _compose(_poly_deriv(profile.coeffs, k), xs[:L]) / math.factorial(k)
        for k in range(1, N + 1)
    ]
    U = [None] + [np.zeros(L) for _ in range(N)]
    for n in range(1, N + 1):
        U[n][0] = u[n]
    W = [np.zeros(L) for _ in range(N + 2)]
    for _ in range(N + 2):
        for n in range(1, N + 1):
            Z = [None] + [_mul(V, U[k]) + W[k] for k in range(1, n + 1)]
            Sz = sum(_mul(Z[k] - B[k], U[n + 1 - k]) for k in range(1, n + 1))
            Su = sum(k * _mul(U[k], U[n + 1 - k]) for k in range(1, n + 1))
            W[n + 1] = _div(_deriv(W[n]) + (n + 1) * Sz - _mul(V, Su) + _mul(A, U[n]),
                            2.0 * (n + 1) * V)
            udot = -(n + 1) * W[n + 1] - Su
            U[n][1:] = udot[:-1] / np.arange(1, L)
    return V, U, W, B


def still_front(profile, X, u, direction=1, t=0.0):
    """Still-water front state from its velocity coefficients ``u[1..N]``.

    ``u`` is the full array ``u[0..N]`` with ``u[0] = 0``.  The surface
    coefficients are the ones slaved to ``u`` by the characteristic
    constraint.
    """
    u = np.asarray(u, dtype=float)
    if u.size < 2 or u[0] != 0.0:
        raise DomainError("still-water front needs u[0] = 0 and order >= 1")
    V, U, W, _ = _still_jets(profile, X, direction, u)
    N = len(u) - 1
    h = np.zeros(N + 1)
    for n in range(1, N + 1):
        h[n] = V[0] * u[n] + W[n][0]
    return FrontSeriesState(STILL, float(X), float(V[0]), u.copy(), h, t)


def hierarchy_rhs_still(s: FrontSeriesState, profile: BottomProfile):
    """Time derivatives ``(Xdot, zeta_dot[0..N], u_dot[0..N])`` at a still-water front."""
    if s.kind != STILL:
        raise DomainError("hierarchy_rhs_still needs a still-water front state")
    if s.order < 1:
        raise DomainError("order must be >= 1")
    direction = 1 if s.Xdot >= 0 else -1
    V, U, W, B = _still_jets(profile, s.X, direction, s.u)
    N = s.order
    zdot = np.zeros(N + 1)
    udot = np.zeros(N + 1)
    for n in range(1, N + 1):
        udot[n] = U[n][1]
        Sz = sum((V[0] * s.u[k] + W[k][0] - B[k][0]) * s.u[n + 1 - k] for k in range(1, n + 1))
        zdot[n] = (n + 1) * (V[0] * W[n + 1][0] - Sz)
    return V[0], zdot, udot


def integrate_still(s0: FrontSeriesState, profile, t_end, tol=1e-10, on_step=None):
    """Integrate a still-water front from ``s0``; returns ``(trajectory, states)``."""
    direction = 1 if s0.Xdot >= 0 else -1
    N = s0.order

    def rhs(t, y):
        V, U, _, _ = _still_jets(profile, y[0], direction, np.concatenate([[0.0], y[1:]]))
        return np.concatenate([[V[0]], [U[n][1] for n in range(1, N + 1)]])

    y0 = np.concatenate([[s0.X], s0.u[1:]])
    traj = dopri5(rhs, s0.t, y0, s0.t + t_end, rtol=tol, atol=tol, on_step=on_step,
                  blowup=lambda y: np.max(np.abs(y[1:])) - 1e12)

    def state_at(i):
        return still_front(profile, traj.y[i, 0], np.concatenate([[0.0], traj.y[i, 1:]]),
                           direction, traj.t[i])

    return traj, state_at


# --- vacuum points ------------------------------------------------------------

def vacuum_front(kind, X, u, eta, t=0.0, u_dry=None):
    """Build a vacuum-point state; ``eta[0]`` must be zero."""
    u = np.asarray(u, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if kind not in (NONPHYSICAL, PHYSICAL):
        raise DomainError("vacuum_front kind must be 'nonphysical' or 'physical'")
    if eta[0] != 0.0:
        raise DomainError("layer thickness must vanish at a vacuum point (eta[0] = 0)")
    if kind == NONPHYSICAL and eta[1] != 0.0:
        raise DomainError("nonphysical vacuum needs eta[1] = 0")
    if kind == PHYSICAL:
        if not eta[1] < 0:
            raise DomainError("physical vacuum needs eta[1] < 0")
        if u_dry is None:
            u_dry = u.copy()
    return FrontSeriesState(kind, float(X), float(u[0]), u, eta, t, u_dry)


def hierarchy_rhs_vacuum(s: FrontSeriesState, profile: BottomProfile):
    """Time derivatives ``(Xdot, u_dot, eta_dot, u_dry_dot)`` at a vacuum point.

    ``Xddot`` equals ``u_dot[0]``.  ``u_dry_dot`` is ``None`` unless the
    state carries dry-side coefficients.
    """
    if s.kind not in (NONPHYSICAL, PHYSICAL):
        raise DomainError("hierarchy_rhs_vacuum needs a vacuum-point state")
    N = s.order
    u = s.u
    eta = np.concatenate([s.h, [0.0]])  # closure: eta_{N+1} = 0
    b = taylor_coeffs(profile, s.X, N + 1)
    udot = np.zeros(N + 1)
    etadot = np.zeros(N + 1)
    udot[0] = -b[1] - eta[1]
    for n in range(1, N + 1):
        etadot[n] = -(n + 1) * sum(u[k] * eta[n + 1 - k] for k in range(1, n + 1))
        udot[n] = -(n + 1) * (eta[n + 1] + b[n + 1]) - sum(
            k * u[k] * u[n + 1 - k] for k in range(1, n + 1))
    ddot = None
    if s.u_dry is not None:
        ud = s.u_dry
        ddot = np.zeros(N + 1)
        for n in range(N + 1):
            ddot[n] = -(n + 1) * b[n + 1] - sum(k * ud[k] * ud[n + 1 - k] for k in range(1, n + 1))
    return u[0], udot, etadot, ddot


def _pack_vacuum(s):
    parts = [[s.X], s.u, s.h[1:]]
    if s.u_dry is not None:
        parts.append(s.u_dry)
    return np.concatenate(parts)


def _unpack_vacuum(kind, y, N, has_dry, t=0.0):
    X = y[0]
    u = y[1:N + 2]
    eta = np.concatenate([[0.0], y[N + 2:2 * N + 2]])
    u_dry = y[2 * N + 2:] if has_dry else None
    return FrontSeriesState(kind, float(X), float(u[0]), u.copy(), eta, t,
                            None if u_dry is None else u_dry.copy())


def integrate_vacuum(s0: FrontSeriesState, profile, t_end, tol=1e-10, on_step=None):
    """Integrate the truncated vacuum hierarchy from ``s0``.

    Returns ``(trajectory, state_at)`` where ``state_at(i)`` rebuilds the
    state at accepted step ``i``.  ``on_step(t, state, derivative)``, if
    given, sees every accepted step.
    """
    N = s0.order
    has_dry = s0.u_dry is not None
    kind = s0.kind

    def rhs(t, y):
        s = _unpack_vacuum(kind, y, N, has_dry, t)
        xd, ud, ed, dd = hierarchy_rhs_vacuum(s, profile)
        parts = [[xd], ud, ed[1:]]
        if has_dry:
            parts.append(dd)
        return np.concatenate(parts)

    hook = None
    if on_step is not None:
        def hook(t, y, f):
            on_step(t, _unpack_vacuum(kind, y, N, has_dry, t),
                    _unpack_vacuum(kind, f, N, has_dry, t))

    traj = dopri5(rhs, s0.t, _pack_vacuum(s0), s0.t + t_end, rtol=tol, atol=tol,
                  on_step=hook, blowup=lambda y: np.max(np.abs(y)) - 1e12)
    return traj, lambda i: _unpack_vacuum(kind, traj.y[i], N, has_dry, traj.t[i])


def quadratic_truncation_rhs(X, Xdot, eta1, eta2, u1, c1, c2):
    """Closed four-unknown system for a quadratic bottom ``c0 + c1 x + c2 x^2/2``.

    Returns derivatives of ``(X, Xdot, eta1, eta2, u1)``; this is the
    hand-reduced form used to cross-check the general hierarchy.
    """
    return (Xdot, -c2 * X - c1 - eta1, -2 * u1 * eta1, -3 * u1 * eta2,
            -u1 * u1 - 2 * eta2 - c2)


def nonphysical_front_motion(profile, x0, v0, t, tol=1e-12):
    """Position of a nonphysical vacuum point, ``Xddot + b'(X) = 0``.

    Closed forms for linear and quadratic bottoms, numerical integration
    otherwise.  ``t`` may be a scalar or an array of nonnegative times.
    """
    t = np.asarray(t, dtype=float)
    c = list(profile.coeffs) + [0.0] * 3
    if profile.degree <= 2:
        a1, a2 = c[1], c[2]
        if a2 == 0.0:
            out = x0 + v0 * t - 0.5 * a1 * t * t
        elif a2 > 0:
            w = math.sqrt(2 * a2)
            xe = -a1 / (2 * a2)
            out = xe + (x0 - xe) * np.cos(w * t) + v0 / w * np.sin(w * t)
        else:
            w = math.sqrt(-2 * a2)
            xe = -a1 / (2 * a2)
            out = xe + (x0 - xe) * np.cosh(w * t) + v0 / w * np.sinh(w * t)
        return out if out.ndim else float(out)
    slope = _poly_deriv(profile.coeffs, 1)

    def rhs(_, y):
        acc = 0.0
        for a in reversed(slope):
            acc = acc * y[0] + a
        return np.array([y[1], -acc])

    tmax = float(np.max(t)) if t.size else 0.0
    traj = dopri5(rhs, 0.0, [x0, v0], tmax, rtol=tol, atol=tol)
    out = traj(t)[..., 0] if tmax > 0 else np.full(t.shape, float(x0))
    return out if np.ndim(out) else float(out)


def front_path_numeric(profile, x0, v0, t_end, tol=1e-12):
    """Dense trajectory of ``(X, Xdot)`` for ``Xddot + b'(X) = 0``."""
    slope = _poly_deriv(profile.coeffs, 1)

    def rhs(_, y):
        acc = 0.0
        for a in reversed(slope):
            acc = acc * y[0] + a
        return np.array([y[1], -acc])

    return dopri5(rhs, 0.0, [x0, v0], t_end, rtol=tol, atol=tol)


def duffing_b2(profile, x0, v0, t_end, tol=1e-12):
    """``b2(t) = b''(X(t))/2`` along a nonphysical vacuum path, as a callable."""
    traj = front_path_numeric(profile, x0, v0, t_end, tol)
    curv = _poly_deriv(profile.coeffs, 2)

    def b2(t):
        X = traj(t)[0]
        acc = 0.0
        for a in reversed(curv):
            acc = acc * X + a
        return 0.5 * acc

    return b2


def reduced_u1eta2_step(u1, eta2, b2_of_t, t_end, tol=1e-10):
    """Integrate ``u1' = -u1^2 - 2 eta2 - 2 b2(t)``, ``eta2' = -3 u1 eta2``.

    Divergence of ``u1`` raises :class:`BlowUpError` with the bracketing
    times.
    """
    def rhs(t, y):
        return np.array([-y[0] ** 2 - 2 * y[1] - 2 * b2_of_t(t), -3 * y[0] * y[1]])

    return dopri5(rhs, 0.0, [u1, eta2], t_end, rtol=tol, atol=tol,
                  blowup=lambda y: abs(y[0]) - 1e12)


def reduced_phi_form(u1, eta2, b2_of_t, t_end, tol=1e-10):
    """Same reduced pair through ``u1 = phi'/phi``, ``eta2 = C/phi^3``.

    Integrates ``phi'' + 2C/phi^2 + 2 b2 phi = 0`` from ``phi(0) = 1``,
    ``phi'(0) = u1`` and returns a callable ``t -> (u1, eta2)`` together
    with the raw trajectory.
    """
    C = eta2

    def rhs(t, y):
        return np.array([y[1], -2 * C / y[0] ** 2 - 2 * b2_of_t(t) * y[0]])

    traj = dopri5(rhs, 0.0, [1.0, u1], t_end, rtol=tol, atol=tol,
                  blowup=lambda y: 1e-12 - abs(y[0]))

    def fields(t):
        phi, dphi = traj(t).T if np.ndim(t) else traj(t)
        return dphi / phi, C / phi**3

    return fields, traj


# --- front paths and the Riccati slope --------------------------------------

@dataclass
class FrontPath:
    """A front trajectory ``X(t)`` with its speed."""

    position: callable
    speed: callable
    x0: float
    t_max: float = math.inf
    label: str = ""


def still_front_path(profile, x0, direction=1, t_max=50.0, tol=1e-12):
    """Path of a front entering still water, ``Xdot = direction sqrt(-b(X))``.

    Closed forms for flat and quadratic bottoms; for other profiles the
    smooth second-order form ``Xddot = -b'(X)/2`` is integrated.  ``t_max``
    is the shoreline arrival time when one exists.
    """
    b0 = profile.eval(x0)
    v0 = front_speed(b0, direction)
    c = list(profile.coeffs) + [0.0] * 3
    if profile.degree == 0:
        return FrontPath(lambda t: x0 + v0 * np.asarray(t), lambda t: v0 + 0 * np.asarray(t),
                         x0, math.inf, "flat")
    if profile.degree == 2 and c[2] > 0:
        a0, a1, a2 = c[0], c[1], c[2]
        xc = -a1 / (2 * a2)
        R = math.sqrt((a1 * a1 / (4 * a2) - a0) / a2)
        w = math.sqrt(a2)
        ph0 = math.asin(max(-1.0, min(1.0, (x0 - xc) / R)))
        s = direction

        def pos(t):
            return xc + R * np.sin(ph0 + s * w * np.asarray(t))

        def spd(t):
            return s * w * R * np.cos(ph0 + s * w * np.asarray(t))

        t_max = (math.pi / 2 - s * ph0) / w
        return FrontPath(pos, spd, x0, t_max, "quadratic")
    slope = _poly_deriv(profile.coeffs, 1)

    def rhs(_, y):
        acc = 0.0
        for a in reversed(slope):
            acc = acc * y[0] + a
        return np.array([y[1], -0.5 * acc])

    # the speed sqrt(-b) reaches zero at a shoreline; stop there
    try:
        traj = dopri5(rhs, 0.0, [x0, v0], t_max, rtol=tol, atol=tol,
                      blowup=lambda y: -direction * y[1])
    except BlowUpError as exc:
        t_max = exc.time
        traj = dopri5(rhs, 0.0, [x0, v0], t_max, rtol=tol, atol=tol)
    return FrontPath(lambda t: traj(t)[..., 0], lambda t: traj(t)[..., 1], x0, t_max, "numeric")


def _riccati_parts(path: FrontPath, zeta1_0):
    v0 = float(path.speed(0.0))
    if v0 <= 0:
        raise DomainError("front must advance (positive speed) at t = 0")

    def I(a, b):
        return integrate.quad(lambda r: float(path.speed(r)) ** -2.5, a, b,
                              epsabs=0, epsrel=1e-13, limit=200)[0]

    pref = 1.5 * v0 ** 1.5
    return v0, I, pref


def riccati_slope_time(path: FrontPath, zeta1_0, t):
    """Surface slope behind the front at time ``t`` from its quadrature form.

    ``zeta_1(t) = (v0/v)^{3/2} / (1/zeta_1(0) + (3/2) v0^{3/2} int_0^t v^{-5/2})``.
    Raises :class:`GradientCatastrophe` when the denominator crosses zero on
    ``[0, t]``, carrying the catastrophe time.
    """
    if zeta1_0 == 0.0:
        return 0.0
    if zeta1_0 < 0:
        t_cat = riccati_catastrophe_time(path, zeta1_0, t)
        if t_cat is not None:
            raise GradientCatastrophe(f"slope diverges at t={t_cat:.16g}", t_cat,
                                      float(path.position(t_cat)))
    v0, I, pref = _riccati_parts(path, zeta1_0)
    d = 1.0 / zeta1_0 + pref * I(0.0, t)
    return (v0 / float(path.speed(t))) ** 1.5 / d


def riccati_catastrophe_time(path: FrontPath, zeta1_0, t_max=None):
    """First zero of the Riccati slope denominator on ``[0, t_max]``, or ``None``.

    Only a negative initial slope can break.  The integral is accumulated
    over ``t_k = t_max (1 - 2^-k)`` so that a speed vanishing at ``t_max``
    (front reaching a shoreline) is approached without evaluating there.
    """
    if zeta1_0 >= 0:
        return None
    t_max = path.t_max if t_max is None else t_max
    if not math.isfinite(t_max):
        t_max = 1e6
    v0, I, pref = _riccati_parts(path, zeta1_0)
    target = -1.0 / zeta1_0 / pref    # denominator vanishes where int_0^t v^{-5/2} = target
    if t_max < path.t_max:
        # speed stays positive on the whole window: one integral decides
        if I(0.0, t_max) < target:
            return None
        return float(optimize.brentq(lambda s: I(0.0, s) - target, 0.0, t_max,
                                     xtol=1e-14, rtol=1e-15))
    acc, a = 0.0, 0.0
    for k in range(1, 60):
        b = t_max * (1.0 - 2.0 ** -k)
        if b <= a:
            break
        piece = I(a, b)
        if acc + piece >= target:
            return float(optimize.brentq(lambda s: acc + I(a, s) - target, a, b,
                                         xtol=1e-14, rtol=1e-15))
        acc, a = acc + piece, b
    return None


class NoCatastrophe(Exception):
    """Raised when a nonnegative initial slope rules out breaking at the front."""


def _shoreline_integral(profile, x0, xs):
    """``I(x) = int_{x0}^{x} (-b)^{-7/4}`` in the variable ``w = (xs - x)^{-3/4}``.

    With this change of variable the integrand
    ``(4/3) ((-b)/(xs - x))^{-7/4}`` stays bounded up to the shoreline.
    """
    def h(w):
        d = w ** (-4.0 / 3.0)
        return (4.0 / 3.0) * (-profile.eval(xs - d) / d) ** -1.75

    w0 = (xs - x0) ** -0.75

    def I_of_w(w):
        return integrate.quad(h, w0, w, epsabs=0, epsrel=1e-13, limit=200)[0]

    return w0, I_of_w


def shock_position(profile, x0, zeta1_0, direction=1):
    """Position where the slope of a right-going front diverges.

    Solves ``1/zeta1_0 + (3/2)(-b(x0))^{3/4} I(x) = 0``.  For bottoms with a
    shoreline the root always lies before it.  ``zeta1_0 >= 0`` raises
    :class:`NoCatastrophe`.
    """
    if zeta1_0 >= 0:
        raise NoCatastrophe(f"initial slope {zeta1_0} >= 0: no breaking at this front")
    if direction != 1:
        raise DomainError("only right-going fronts are supported")
    b0 = profile.eval(x0)
    if b0 >= 0:
        raise DomainError(f"x0={x0} is not wet")
    pref = 1.5 * (-b0) ** 0.75
    target = -1.0 / zeta1_0 / pref
    xs = profile.shoreline(x0, 1) if profile.degree > 0 else None
    if xs is not None:
        w0, I_of_w = _shoreline_integral(profile, x0, xs)
        hi = 2.0 * w0
        while I_of_w(hi) < target:
            hi *= 2.0
        w = optimize.brentq(lambda w: I_of_w(w) - target, w0, hi, xtol=1e-14, rtol=1e-15)
        return float(xs - w ** (-4.0 / 3.0))

    def I(x):
        return integrate.quad(lambda r: (-profile.eval(r)) ** -1.75, x0, x,
                              epsabs=0, epsrel=1e-13, limit=200)[0]

    hi = x0 + 1.0
    while I(hi) < target:
        hi = x0 + 2 * (hi - x0)
    return float(optimize.brentq(lambda x: I(x) - target, x0, hi, xtol=1e-13, rtol=1e-15))


def shoulder_initial_slope(zeta_in_slope, b0):
    """Initial ``(zeta_1, u_1)`` at the right front born from a corner."""
    if b0 >= 0:
        raise DomainError(f"corner at or beyond the shoreline (b0={b0})")
    return 0.5 * zeta_in_slope, zeta_in_slope / (2.0 * math.sqrt(-b0))


def corner_split_fronts(profile, x0, left_state=None, t_max=50.0, tol=1e-12):
    """The two characteristics leaving a corner at ``x0`` in fluid at rest.

    The right one runs into still water (depth ``-b``).  The left one
    obeys ``Xdot = u - sqrt(eta)`` with ``(eta, u) = left_state(x, t)``;
    without ``left_state`` the left side is taken as still water as well.
    """
    if profile.eval(x0) >= 0:
        raise DomainError(f"corner at x0={x0} is dry")
    right = still_front_path(profile, x0, 1, t_max, tol)
    if left_state is None:
        left = still_front_path(profile, x0, -1, t_max, tol)
        return left, right

    def rhs(t, y):
        eta, u = left_state(y[0], t)
        if eta <= 0:
            raise DomainError(f"left characteristic reached a dry point at t={t}")
        return np.array([u - math.sqrt(eta)])

    traj = dopri5(rhs, 0.0, [x0], t_max, rtol=tol, atol=tol)

    def spd(t):
        X = float(traj(t)[0])
        eta, u = left_state(X, t)
        return u - math.sqrt(eta)

    left = FrontPath(lambda t: traj(t)[..., 0], spd, x0, t_max, "numeric")
    return left, right


def velocity_jump_evolution(eta1_path, jump0, t):
    """Velocity jump at a physical vacuum point, ``d[[u]]/dt = eta_1``.

    ``eta1_path`` is a callable of time; ``t`` a scalar or array of
    nonnegative sample times.
    """
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    order = np.argsort(ts)
    jumps = np.empty_like(ts)
    acc, last = float(jump0), 0.0
    for i in order:
        acc += integrate.quad(eta1_path, last, ts[i], epsabs=1e-14, epsrel=1e-13, limit=200)[0]
        last = ts[i]
        jumps[i] = acc
    rates = np.array([eta1_path(s) for s in ts], dtype=float)
    return VelocityJump(ts, jumps, rates)
