"""Incomplete elliptic integrals of the first and third kind.

Built on Carlson's symmetric integrals R_F, R_J and R_C, each evaluated by
the duplication algorithm (B. C. Carlson, Numer. Algorithms 10, 1995).
Legendre forms:

    F(phi, k)     = s R_F(c^2, 1 - k^2 s^2, 1)
    Pi(n; phi, k) = s R_F(c^2, d^2, 1) + (n/3) s^3 R_J(c^2, d^2, 1, 1 - n s^2)

with ``s = sin(phi)``, ``c = cos(phi)``, ``d^2 = 1 - k^2 s^2``.  The sign
convention for ``n`` is the one where ``n < 1`` is the regular branch
(``1 - n sin^2`` in the denominator), negative ``n`` included.
"""

import math

from .errors import DomainError

# relative error bound for the series left after duplication
_RTOL = 1e-15


def carlson_rf(x, y, z):
    """R_F(x, y, z) for nonnegative arguments, at most one of them zero."""
    if min(x, y, z) < 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError("R_F needs nonnegative arguments, at most one zero")
    x0, y0 = x, y
    A0 = (x + y + z) / 3.0
    Q = (3.0 * _RTOL) ** (-1.0 / 6.0) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    A = A0
    scale = 1.0
    while Q * scale >= abs(A):
        lam = math.sqrt(x * y) + math.sqrt(y * z) + math.sqrt(z * x)
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        A = 0.25 * (A + lam)
        scale *= 0.25
    X = (A0 - x0) * scale / A
    Y = (A0 - y0) * scale / A
    Z = -(X + Y)
    E2 = X * Y - Z * Z
    E3 = X * Y * Z
    return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0) / math.sqrt(A)


def carlson_rc(x, y):
    """R_C(x, y) for ``x >= 0`` and ``y != 0`` (Cauchy principal value for y < 0)."""
    if x < 0 or y == 0:
        raise DomainError("R_C needs x >= 0 and y != 0")
    if y < 0:
        # principal value: R_C(x, y) = sqrt(x/(x-y)) R_C(x - y, -y)
        return math.sqrt(x / (x - y)) * carlson_rc(x - y, -y)
    if x == y:
        return 1.0 / math.sqrt(x)
    if x < y:
        e = math.sqrt(y - x)
        return math.atan(e / math.sqrt(x)) / e if x > 0 else math.pi / (2.0 * math.sqrt(y))
    e = math.sqrt(x - y)
    t = e / math.sqrt(x)
    if t < 1e-4:
        # atanh(t)/t series, avoids cancellation near x == y
        return (1.0 + t * t / 3.0 + t**4 / 5.0) / math.sqrt(x)
    return math.atanh(t) / e


def carlson_rj(x, y, z, p):
    """R_J(x, y, z, p) for nonnegative x, y, z (at most one zero) and p != 0.

    Negative ``p`` is handled by Carlson's Cauchy principal value
    transformation.
    """
    if min(x, y, z) < 0 or (x == 0) + (y == 0) + (z == 0) > 1:
        raise DomainError("R_J needs nonnegative x, y, z with at most one zero")
    if p == 0:
        raise DomainError("R_J needs p != 0")
    if p < 0:
        # order so that x <= y <= z, then map to a positive p
        x, y, z = sorted((x, y, z))
        q = -p
        pp = (z * (x + y + q) - x * y) / (z + q)
        val = (pp - z) * _rj_positive(x, y, z, pp) - 3.0 * carlson_rf(x, y, z)
        val += 3.0 * math.sqrt(x * y * z / (x * y + pp * q)) * carlson_rc(x * y + pp * q, pp * q)
        return val / (q + z)
    return _rj_positive(x, y, z, p)


def _rj_positive(x, y, z, p):
    x0, y0, z0 = x, y, z
    A0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    Q = (0.25 * _RTOL) ** (-1.0 / 6.0) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z), abs(A0 - p))
    A = A0
    scale = 1.0
    acc = 0.0
    fac = 1.0
    while Q * scale >= abs(A):
        sx, sy, sz, sp = math.sqrt(x), math.sqrt(y), math.sqrt(z), math.sqrt(p)
        lam = sx * sy + sy * sz + sz * sx
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = delta * scale**3 / (d * d)
        acc += fac * carlson_rc(1.0, 1.0 + e) / d
        fac *= 0.25
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
        p = 0.25 * (p + lam)
        A = 0.25 * (A + lam)
        scale *= 0.25
    X = (A0 - x0) * scale / A
    Y = (A0 - y0) * scale / A
    Z = (A0 - z0) * scale / A
    P = -(X + Y + Z) / 2.0
    E2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    E3 = X * Y * Z + 2.0 * E2 * P + 4.0 * P**3
    E4 = (2.0 * X * Y * Z + E2 * P + 3.0 * P**3) * P
    E5 = X * Y * Z * P * P
    series = (1.0 - 3.0 * E2 / 14.0 + E3 / 6.0 + 9.0 * E2 * E2 / 88.0 - 3.0 * E4 / 22.0
              - 9.0 * E2 * E3 / 52.0 + 3.0 * E5 / 26.0)
    return fac * series / (A * math.sqrt(A)) + 6.0 * acc


def _check_amplitude_modulus(phi, k):
    if not (0.0 <= phi <= math.pi / 2):
        raise DomainError(f"amplitude phi={phi} outside [0, pi/2]")
    if not (0.0 <= k < 1.0):
        raise DomainError(f"modulus k={k} outside [0, 1)")


def ellint_F(phi, k):
    """Incomplete elliptic integral of the first kind F(phi, k)."""
    _check_amplitude_modulus(phi, k)
    if phi == 0.0:
        return 0.0
    s = math.sin(phi)
    c = math.cos(phi) if phi < math.pi / 2 else 0.0
    return s * carlson_rf(c * c, 1.0 - (k * s) ** 2, 1.0)


def ellint_Pi(n, phi, k):
    """Incomplete elliptic integral of the third kind Pi(n; phi, k).

    Defined as the integral of ``1 / ((1 - n sin^2) sqrt(1 - k^2 sin^2))``
    from 0 to ``phi``; requires ``n < 1``.
    """
    _check_amplitude_modulus(phi, k)
    if not n < 1.0:
        raise DomainError(f"characteristic n={n} must be < 1")
    if phi == 0.0:
        return 0.0
    s = math.sin(phi)
    c = math.cos(phi) if phi < math.pi / 2 else 0.0
    d2 = 1.0 - (k * s) ** 2
    val = s * carlson_rf(c * c, d2, 1.0)
    if n != 0.0:
        val += n / 3.0 * s**3 * carlson_rj(c * c, d2, 1.0, 1.0 - n * s * s)
    return val
