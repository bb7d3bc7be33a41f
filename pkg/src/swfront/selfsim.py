"""Exact parabolic solutions over the bowl ``b(x) = x^2 - 1``.

The ansatz ``eta = mu + gamma (x - beta)^2``, ``u = delta + alpha (x - beta)``
reduces the shallow water equations to

    alpha' = -alpha^2 - 2 gamma - 2     gamma' = -3 alpha gamma
    mu'    = -alpha mu                  beta'  = delta      delta' = -2 beta

The curvature pair conserves ``H = (alpha^2 - 4 gamma + 2) / (2 gamma^(2/3))``
and in ``q = gamma^(-1/3)``, ``p = alpha q`` becomes the point mass
``q' = p``, ``p' = -U'(q)`` with ``U(q) = q^2 - 2/q`` and energy ``E = H``.
Orbits with ``q < 0`` (``gamma < 0``) are closed; orbits with ``q > 0`` fall
into ``q = 0`` where ``gamma`` blows up.

Periods and blow-up times are written with ``sigma = gamma / gamma0`` for
data with ``alpha0 = 0``.  Then

    t(sigma) = int_1^sigma ds / (s sqrt(4 gamma0 (s-1)(s-sp)(s-sm)))

with ``sp, sm = (-1 +- sqrt(1 - 8 gamma0)) / (4 gamma0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .elliptic import ellint_F, ellint_Pi
from .errors import BlowUpError, DomainError
from .hierarchy import PHYSICAL, vacuum_front
from .integrate import dopri5

GAMMA_BLOWUP = 1e12
FIXED_POINT_TOL = 1e-12


@dataclass(frozen=True)
class ParabolicState:
    alpha: float
    gamma: float
    mu: float
    beta: float
    delta: float
    t: float = 0.0

    def as_array(self):
        return np.array([self.alpha, self.gamma, self.mu, self.beta, self.delta])

    @classmethod
    def from_array(cls, y, t=0.0):
        return cls(*(float(v) for v in y[:5]), t=float(t))


@dataclass(frozen=True)
class CanonicalPoint:
    q: float
    p: float
    E: float


@dataclass(frozen=True)
class Regime:
    """``kind`` is one of ``FixedPoint``, ``Sloshing``, ``BlowUp``."""

    kind: str
    energy: float
    period: float | None = None
    blowup_time: float | None = None


def _rhs(y):
    a, g, m, b, d = y
    return np.array([-a * a - 2 * g - 2, -3 * a * g, -a * m, d, -2 * b])


def parabolic_rhs(s: ParabolicState):
    """``(alpha', gamma', mu', beta', delta')`` at state ``s``."""
    return _rhs(s.as_array())


def invariant_H(alpha, gamma):
    """Conserved energy of the curvature pair; works elementwise on arrays."""
    if np.any(np.asarray(gamma) == 0):
        raise DomainError("curvature gamma must be nonzero")
    c = np.cbrt(gamma)
    H = (alpha * alpha - 4 * gamma + 2) / (2 * c * c)
    return float(H) if np.ndim(H) == 0 else H


def potential(q):
    return q * q - 2.0 / q


def to_canonical(alpha, gamma):
    if gamma == 0:
        raise DomainError("curvature gamma must be nonzero")
    q = 1.0 / float(np.cbrt(gamma))
    p = alpha * q
    return CanonicalPoint(q, p, 0.5 * p * p + potential(q))


def sigma_roots(gamma0):
    """Roots of ``2 gamma0 s^2 + s + 1`` as ``(sigma_plus, sigma_minus)``.

    Real only for ``gamma0 <= 1/8``.
    """
    disc = 1.0 - 8.0 * gamma0
    if disc < 0:
        raise DomainError("complex roots for gamma0 > 1/8")
    r = math.sqrt(disc)
    # rationalized forms avoid cancellation for small |gamma0|
    sp = -2.0 / (1.0 + r)
    sm = (-1.0 - r) / (4.0 * gamma0)
    return sp, sm


def _check_slosh(gamma0):
    if not (-1.0 < gamma0 < 0.0):
        raise DomainError(f"gamma0={gamma0} outside (-1, 0)")


def _slosh_time(gamma0, sigma):
    """Elliptic closed form of ``t(sigma)`` on a sloshing orbit, ``1 <= sigma <= sm``."""
    sp, sm = sigma_roots(gamma0)
    if not (1.0 <= sigma <= sm * (1 + 1e-15)):
        raise DomainError(f"sigma={sigma} outside [1, {sm}]")
    sigma = min(sigma, sm)
    k2 = (sm - 1.0) / (sm - sp)
    k = math.sqrt(k2)
    n = sp * k2
    ratio = (sigma - 1.0) / (sigma - sp) / k2
    phi = math.asin(min(1.0, math.sqrt(max(0.0, ratio))))
    F = ellint_F(phi, k)
    Pi = ellint_Pi(n, phi, k)
    return (F / sp + (1.0 - 1.0 / sp) * Pi) / (math.sqrt(-gamma0) * math.sqrt(sm - sp))


def period(gamma0):
    """Period of the curvature oscillation for data ``(alpha0, gamma0) = (0, gamma0)``.

    Elliptic closed form; valid for ``gamma0`` in ``(-1, 0)``.
    """
    _check_slosh(gamma0)
    _, sm = sigma_roots(gamma0)
    return 2.0 * _slosh_time(gamma0, sm)


def slosh_energy(gamma0):
    return (1.0 - 2.0 * gamma0) / np.cbrt(gamma0) ** 2


def turning_points(E):
    """Roots of ``U(q) = E`` as ``(q_lo, q_hi, q_pos)``; ``q_lo < q_hi < 0 < q_pos``."""
    if not E > 3.0:
        raise DomainError(f"closed orbits need E > 3, got {E}")
    roots = np.sort(np.roots([1.0, 0.0, -E, -2.0]).real)
    return tuple(float(r) for r in roots)


def period_from_energy(E):
    """Period of the closed orbit at energy ``E > 3``.

    The orbit is relabelled by its far turning point ``q_lo < -1``, which
    corresponds to ``gamma0 = q_lo^-3`` in ``(-1, 0)``.
    """
    q_lo, _, _ = turning_points(E)
    return period(q_lo ** -3)


def period_quadrature(gamma0=None, E=None):
    """Period from ``2 int dq / sqrt(2 (E - U(q)))`` between the turning points.

    Independent of the elliptic route; used as its oracle.
    """
    if E is None:
        _check_slosh(gamma0)
        E = slosh_energy(gamma0)
    q_lo, q_hi, q_pos = turning_points(E)
    # E - U = (q - q_lo)(q_hi - q)(q_pos - q) / (-q)
    val, _ = integrate.quad(lambda q: math.sqrt(-q / (2.0 * (q_pos - q))), q_lo, q_hi,
                            weight="alg", wvar=(-0.5, -0.5), epsabs=0, epsrel=1e-13, limit=200)
    return 2.0 * val


def blowup_time(gamma0):
    """Time for ``gamma`` to diverge from ``(alpha0, gamma0) = (0, gamma0)``, ``gamma0 > 0``.

    ``int_1^inf ds / (s sqrt(2 (s-1)(2 gamma0 s^2 + s + 1)))`` evaluated with
    ``s = 1 + v^2``, which removes the endpoint singularity.
    """
    if not gamma0 > 0:
        raise DomainError(f"blow-up needs gamma0 > 0, got {gamma0}")

    def f(v):
        s = 1.0 + v * v
        return 2.0 / (s * math.sqrt(2.0 * (2.0 * gamma0 * s * s + s + 1.0)))

    # the integrand changes character near s ~ 1/(2 gamma0)
    vc = max(2.0, (2.0 * gamma0) ** -0.5)
    parts = [(0.0, 1.0), (1.0, vc), (vc, np.inf)]
    total = 0.0
    for a, b in parts:
        if b > a:
            total += integrate.quad(f, a, b, epsabs=0, epsrel=1e-13, limit=400)[0]
    return total


def blowup_time_elliptic(gamma0):
    """Elliptic closed form of :func:`blowup_time`, real roots only (``0 < gamma0 < 1/8``)."""
    if not (0.0 < gamma0 < 0.125):
        raise DomainError(f"real-root elliptic form needs 0 < gamma0 < 1/8, got {gamma0}")
    sp, sm = sigma_roots(gamma0)
    k = math.sqrt((sp - sm) / (1.0 - sm))
    n = -sm / (1.0 - sm)
    K = ellint_F(math.pi / 2, k)
    Pi = ellint_Pi(n, math.pi / 2, k)
    return -(Pi - K) / (math.sqrt(gamma0) * sm * math.sqrt(1.0 - sm))


def blowup_time_from_state(alpha0, gamma0):
    """Blow-up time for arbitrary ``alpha0`` and ``gamma0 > 0`` via the ``q`` quadrature."""
    if not gamma0 > 0:
        raise DomainError(f"blow-up needs gamma0 > 0, got {gamma0}")
    if alpha0 == 0.0:
        return blowup_time(gamma0)
    c = to_canonical(alpha0, gamma0)
    # turning point of the outgoing leg: U(q) = E with q > 0
    roots = np.roots([1.0, 0.0, -c.E, -2.0])
    q_turn = max(r.real for r in roots if abs(r.imag) < 1e-9 and r.real > 0)

    def leg(q_a):
        # int_0^{q_a} dq / sqrt(2 (E - U)); substitution q = q_turn - w^2 near the top
        def f(q):
            return 1.0 / math.sqrt(max(2.0 * (c.E - potential(q)), 1e-300)) if q > 0 else 0.0
        if q_a >= q_turn * (1 - 1e-14):
            wmax = math.sqrt(q_turn)
            return integrate.quad(lambda w: 2 * w * f(q_turn - w * w), 0.0, wmax,
                                  epsabs=0, epsrel=1e-12, limit=400)[0]
        return integrate.quad(f, 0.0, q_a, epsabs=0, epsrel=1e-12, limit=400)[0]

    if c.p < 0:
        return leg(c.q)
    return 2.0 * leg(q_turn) - leg(c.q)


def time_of_sigma(gamma0, sigma, branch="+"):
    """Time at which ``gamma / gamma0`` reaches ``sigma`` for ``alpha0 = 0``.

    ``branch`` picks the sign of the square root: ``"+"`` is forward time,
    ``"-"`` the time-reversed leg (``t <= 0``).
    """
    if branch not in ("+", "-"):
        raise DomainError("branch must be '+' or '-'")
    sign = 1.0 if branch == "+" else -1.0
    if gamma0 < 0:
        _check_slosh(gamma0)
        return sign * _slosh_time(gamma0, sigma)
    if gamma0 == 0:
        raise DomainError("curvature gamma0 must be nonzero")
    if sigma < 1:
        raise DomainError(f"sigma={sigma} below 1 on a blow-up orbit")
    if sigma == 1:
        return 0.0
    vmax = math.sqrt(sigma - 1.0)

    def f(v):
        s = 1.0 + v * v
        return 2.0 / (s * math.sqrt(2.0 * (2.0 * gamma0 * s * s + s + 1.0)))

    return sign * integrate.quad(f, 0.0, vmax, epsabs=0, epsrel=1e-13, limit=400)[0]


def classify(gamma0, alpha0=0.0):
    if gamma0 == 0:
        raise DomainError("curvature gamma0 must be nonzero")
    E = float(invariant_H(alpha0, gamma0))
    if gamma0 < 0:
        if abs(gamma0 + 1.0) <= FIXED_POINT_TOL and abs(alpha0) <= FIXED_POINT_TOL:
            return Regime("FixedPoint", E)
        return Regime("Sloshing", E, period=period_from_energy(E))
    return Regime("BlowUp", E, blowup_time=blowup_time_from_state(alpha0, gamma0))


def reconstruct_fields(s: ParabolicState, x):
    x = np.asarray(x, dtype=float)
    r = x - s.beta
    return s.mu + s.gamma * r * r, s.delta + s.alpha * r


def vacuum_points(s: ParabolicState):
    """The two dry points ``beta -+ sqrt(mu/|gamma|)``; empty when the surface never meets the bottom."""
    if s.gamma >= 0 or s.mu < 0:
        return ()
    half = math.sqrt(s.mu / -s.gamma)
    return (s.beta - half, s.beta + half)


def selfsim_to_series(s: ParabolicState, order=2):
    """Series state at the right dry point of a sloshing drop."""
    if not (s.gamma < 0 and s.mu > 0):
        raise DomainError("series mapping needs gamma < 0 and mu > 0")
    if order < 2:
        raise DomainError("order must be >= 2 to hold the curvature")
    half = math.sqrt(s.mu / -s.gamma)
    u = np.zeros(order + 1)
    eta = np.zeros(order + 1)
    u[0] = s.delta + s.alpha * half
    u[1] = s.alpha
    eta[1] = -2.0 * math.sqrt(-s.gamma * s.mu)
    eta[2] = s.gamma
    st = vacuum_front(PHYSICAL, s.beta + half, u, eta, s.t)
    return st


@dataclass
class ParabolicTrajectory:
    traj: object

    @property
    def t(self):
        return self.traj.t

    def state(self, t):
        return ParabolicState.from_array(self.traj(t), t)

    def states(self):
        return [ParabolicState.from_array(y, t) for t, y in zip(self.traj.t, self.traj.y)]

    @property
    def final(self):
        return ParabolicState.from_array(self.traj.y[-1], self.traj.t[-1])


def integrate_parabolic(s0: ParabolicState, t_end, tol=1e-10, max_step=np.inf):
    """Adaptive integration of the five-field system from ``s0`` for a duration ``t_end``.

    Raises :class:`BlowUpError` when ``|gamma|`` exceeds ``1e12`` or the step
    size underflows; the error carries the divergence time.
    """
    if s0.gamma == 0:
        raise DomainError("curvature gamma must be nonzero")
    sign0 = math.copysign(1.0, s0.gamma)

    def check(t, y, f):
        if math.copysign(1.0, y[1]) != sign0:
            raise RuntimeError(f"curvature changed sign at t={t}")

    traj = dopri5(lambda t, y: _rhs(y), s0.t, s0.as_array(), s0.t + t_end, rtol=tol, atol=tol,
                  max_step=max_step, on_step=check,
                  blowup=lambda y: abs(y[1]) - GAMMA_BLOWUP)
    return ParabolicTrajectory(traj)


def center_of_mass(beta0, delta0, t):
    """Harmonic centre-of-mass motion ``beta(t)``."""
    w = math.sqrt(2.0)
    t = np.asarray(t, dtype=float)
    return beta0 * np.cos(w * t) + delta0 / w * np.sin(w * t)
