"""Polynomial bottom profiles and the parabolic-bowl scaling.

All profiles are stored as monomial coefficients ``b(x) = sum a_k x**k``.
The named constructors follow the conventions used elsewhere in the
package:

* ``flat(Q)``                -> ``-Q``
* ``linear(c0, c1)``         -> ``c0 + c1 x``
* ``quadratic(c0, c1, c2)``  -> ``c0 + c1 x + c2 x**2``
* ``quartic(c0, c2, c4)``    -> ``c0 + c2 x**2 / 2 + c4 x**4 / 4`` (Duffing form)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

MAX_DEGREE = 8

KINDS = ("flat", "linear", "quadratic", "quartic", "polynomial")


@dataclass(frozen=True)
class BottomProfile:
    kind: str
    params: tuple
    coeffs: tuple = field(repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown bottom kind {self.kind!r}")
        if not all(math.isfinite(c) for c in self.params):
            raise DomainError("bottom coefficients must be finite")

    # constructors -------------------------------------------------------

    @classmethod
    def flat(cls, Q):
        Q = float(Q)
        if not Q > 0:
            raise DomainError("flat bottom requires depth Q > 0")
        return cls("flat", (Q,), (-Q,))

    @classmethod
    def linear(cls, c0, c1):
        return cls("linear", (float(c0), float(c1)), (float(c0), float(c1)))

    @classmethod
    def quadratic(cls, c0, c1, c2):
        p = (float(c0), float(c1), float(c2))
        return cls("quadratic", p, p)

    @classmethod
    def quartic(cls, c0, c2, c4):
        p = (float(c0), float(c2), float(c4))
        return cls("quartic", p, (p[0], 0.0, p[1] / 2, 0.0, p[2] / 4))

    @classmethod
    def polynomial(cls, coeffs, max_degree=MAX_DEGREE):
        c = tuple(float(a) for a in coeffs)
        if not c:
            raise DomainError("polynomial bottom needs at least one coefficient")
        if c[-1] == 0.0:
            raise DomainError("trailing polynomial coefficient must be nonzero")
        if len(c) - 1 > max_degree:
            raise DomainError(f"polynomial degree {len(c) - 1} exceeds cap {max_degree}")
        return cls("polynomial", c, c)

    @classmethod
    def parabolic(cls):
        """The scaled bowl ``x**2 - 1``."""
        return cls.quadratic(-1.0, 0.0, 1.0)

    @classmethod
    def from_spec(cls, spec):
        """Build from a mapping ``{"kind": ..., "coeffs": [...]}``."""
        kind = spec["kind"]
        coeffs = list(spec.get("coeffs", []))
        builders = {
            "flat": (cls.flat, 1),
            "linear": (cls.linear, 2),
            "quadratic": (cls.quadratic, 3),
            "quartic": (cls.quartic, 3),
        }
        if kind == "polynomial":
            return cls.polynomial(coeffs)
        if kind == "parabolic":
            if coeffs:
                raise DomainError("bottom kind 'parabolic' takes no coefficients")
            return cls.parabolic()
        if kind not in builders:
            raise DomainError(f"unknown bottom kind {kind!r}")
        build, nargs = builders[kind]
        if len(coeffs) != nargs:
            raise DomainError(f"bottom kind {kind!r} takes {nargs} coefficients, got {len(coeffs)}")
        return build(*coeffs)

    def to_spec(self):
        return {"kind": self.kind, "coeffs": list(self.params)}

    # evaluation ---------------------------------------------------------

    @property
    def degree(self):
        c = self.coeffs
        d = len(c) - 1
        while d > 0 and c[d] == 0.0:
            d -= 1
        return d

    def eval(self, x):
        """Bottom elevation at ``x`` (Horner; scalar or array)."""
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc if acc.ndim else float(acc)

    __call__ = eval

    def derivative(self, x, order=1):
        """``d^order b / dx^order`` at ``x``."""
        return math.factorial(order) * taylor_coeffs(self, x, order)[order]

    def shoreline(self, x0, direction=1, span=1e3):
        """First point beyond ``x0`` (in ``direction``) where ``b`` reaches 0.

        Returns ``None`` when the bottom stays below zero out to ``span``.
        """
        if self.eval(x0) >= 0:
            raise DomainError(f"point {x0} is not wet (b >= 0)")
        roots = np.roots(list(reversed(self.coeffs))) if self.degree > 0 else []
        best = None
        for r in roots:
            if abs(r.imag) > 1e-12 * max(1.0, abs(r.real)):
                continue
            r = r.real
            if (r - x0) * direction > 0 and abs(r - x0) <= span:
                if best is None or abs(r - x0) < abs(best - x0):
                    best = r
        return None if best is None else float(best)


def taylor_coeffs(profile, x, n):
    """Taylor coefficients ``b_0..b_n`` of ``profile`` about ``x``.

    ``b_k = b^{(k)}(x) / k!``, computed by repeated synthetic division of
    the coefficient list (an exact Taylor shift, no differencing).
    Coefficients beyond the polynomial degree are exactly zero.
    """
    if n < 0:
        raise DomainError("order n must be >= 0")
    work = [float(a) for a in profile.coeffs]
    deg = len(work) - 1
    out = []
    for k in range(deg + 1):
        # dividing by (t - x) leaves the remainder p(x) and the quotient
        acc = 0.0
        quotient = []
        for a in reversed(work):
            acc = acc * x + a
            quotient.append(acc)
        out.append(quotient[-1])
        work = list(reversed(quotient[:-1]))
        if not work:
            break
    out = out[: n + 1]
    out.extend([0.0] * (n + 1 - len(out)))
    return out


@dataclass(frozen=True)
class ScalingRecord:
    """Scales that map a dimensional bowl ``kappa x**2 - Q`` onto ``x**2 - 1``."""

    length: float
    time: float
    velocity: float
    height: float
    g: float

    def to_dimensionless(self, x=None, t=None, u=None, eta=None):
        out = {}
        if x is not None:
            out["x"] = np.asarray(x) / self.length
        if t is not None:
            out["t"] = np.asarray(t) / self.time
        if u is not None:
            out["u"] = np.asarray(u) / self.velocity
        if eta is not None:
            out["eta"] = np.asarray(eta) / self.height
        return out

    def to_dimensional(self, x=None, t=None, u=None, eta=None):
        out = {}
        if x is not None:
            out["x"] = np.asarray(x) * self.length
        if t is not None:
            out["t"] = np.asarray(t) * self.time
        if u is not None:
            out["u"] = np.asarray(u) * self.velocity
        if eta is not None:
            out["eta"] = np.asarray(eta) * self.height
        return out


def nondimensionalize(kappa, Q, g):
    """Scaling record for a bowl of curvature ``kappa`` and depth ``Q``."""
    for name, v in (("kappa", kappa), ("Q", Q), ("g", g)):
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be positive, got {v}")
    l0 = math.sqrt(Q / kappa)
    rate = math.sqrt(g * kappa)
    return ScalingRecord(length=l0, time=1.0 / rate, velocity=l0 * rate,
                         height=kappa * l0 * l0, g=g)
