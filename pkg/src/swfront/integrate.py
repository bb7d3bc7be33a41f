"""Embedded Runge-Kutta 5(4) integrator (Dormand-Prince) with PI step control.

Kept in-house rather than using ``scipy.integrate.solve_ivp`` because the
selfsim and hierarchy modules need three things at once: a hook on every
accepted step, blow-up detection by a threshold on the state, and the event
time refined by bisection on the dense-output polynomial of the final step.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BlowUpError

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = _B - np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                    187 / 2100, 1 / 40])

H_MIN = 1e-14


@dataclass
class Trajectory:
    """Accepted steps of an integration, with cubic Hermite dense output."""

    t: np.ndarray
    y: np.ndarray
    dy: np.ndarray = field(repr=False)
    nfev: int = 0
    rejected: int = 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        tq = np.atleast_1d(t)
        idx = np.clip(np.searchsorted(self.t, tq, side="right") - 1, 0, len(self.t) - 2)
        out = np.array([_hermite(self.t[i], self.t[i + 1], self.y[i], self.y[i + 1],
                                 self.dy[i], self.dy[i + 1], s) for i, s in zip(idx, tq)])
        return out[0] if scalar else out

    @property
    def t_final(self):
        return float(self.t[-1])

    @property
    def y_final(self):
        return self.y[-1]


def _hermite(t0, t1, y0, y1, f0, f1, t):
    h = t1 - t0
    s = (t - t0) / h
    h00 = (1 + 2 * s) * (1 - s) ** 2
    h10 = s * (1 - s) ** 2
    h01 = s * s * (3 - 2 * s)
    h11 = s * s * (s - 1)
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1


def dopri5(rhs, t0, y0, t_end, rtol=1e-10, atol=1e-12, h0=None, max_step=np.inf,
           max_steps=10_000_000, blowup=None, on_step=None):
    """Integrate ``y' = rhs(t, y)`` from ``t0`` to ``t_end``.

    ``blowup(y)`` (optional) returns a scalar that turns positive once the
    state counts as divergent; the crossing time is then located by
    bisection on the Hermite interpolant of the last step and reported
    through :class:`BlowUpError`.  Step-size underflow below ``H_MIN`` is
    reported the same way.  ``on_step(t, y, dy)`` is called after every
    accepted step (including the initial point).
    """
    y = np.array(y0, dtype=float)
    t = float(t0)
    direction = 1.0 if t_end >= t0 else -1.0
    span = abs(t_end - t0)
    f = np.asarray(rhs(t, y), dtype=float)
    nfev = 1
    ts, ys, fs = [t], [y.copy()], [f.copy()]
    if on_step is not None:
        on_step(t, y, f)
    if span == 0:
        return Trajectory(np.array(ts), np.array(ys), np.array(fs), nfev)

    if h0 is None:
        scale = atol + rtol * np.abs(y)
        d0 = np.linalg.norm(y / scale) / np.sqrt(y.size)
        d1 = np.linalg.norm(f / scale) / np.sqrt(y.size)
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h = min(abs(h0), max_step, span)

    beta = 0.04
    expo = 0.2 - 0.75 * beta
    err_old = 1e-4
    rejected = 0
    k = np.empty((7, y.size))
    steps = 0
    while direction * (t_end - t) > 0:
        if steps >= max_steps:
            raise RuntimeError(f"step budget {max_steps} exhausted at t={t}")
        if h < H_MIN:
            raise BlowUpError(f"step size underflow at t={t:.16g}", t, (t, t))
        last = h >= abs(t_end - t)
        if last:
            h = abs(t_end - t)
        hs = direction * h
        k[0] = f
        for i in range(1, 7):
            yi = y + hs * (np.dot(_A[i], k[:i]))
            k[i] = rhs(t + _C[i] * hs, yi)
        nfev += 6
        y_new = yi  # stage 7 is evaluated at the 5th order solution (FSAL)
        err_vec = hs * np.dot(_E, k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        with np.errstate(invalid="ignore", over="ignore"):
            err = np.sqrt(np.mean((err_vec / scale) ** 2))
        if not np.isfinite(err):
            rejected += 1
            h *= 0.2
            continue
        if err <= 1.0:
            t_new = t_end if last else t + hs
            f_new = k[6].copy()
            if blowup is not None and blowup(y_new) > 0:
                tb = _bisect_event(blowup, t, t_new, y, y_new, f, f_new)
                raise BlowUpError(f"state diverged near t={tb:.16g}", tb, (t, t_new))
            t, y, f = t_new, y_new.copy(), f_new
            ts.append(t)
            ys.append(y.copy())
            fs.append(f.copy())
            steps += 1
            if on_step is not None:
                on_step(t, y, f)
            fac = err ** expo / err_old ** beta / 0.9 if err > 0 else 0.1
            fac = min(5.0, max(0.1, fac))
            h = min(h / fac, max_step)
            err_old = max(err, 1e-4)
        else:
            rejected += 1
            h /= min(5.0, err ** expo / 0.9)
    return Trajectory(np.array(ts), np.array(ys), np.array(fs), nfev, rejected)


def _bisect_event(g, ta, tb, ya, yb, fa, fb, iters=200):
    lo, hi = ta, tb
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if g(_hermite(ta, tb, ya, yb, fa, fb, mid)) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
