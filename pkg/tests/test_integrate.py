import math

import numpy as np
import pytest

from swfront.errors import BlowUpError
from swfront.integrate import dopri5


def test_harmonic_oscillator():
    tr = dopri5(lambda t, y: np.array([y[1], -y[0]]), 0.0, [1.0, 0.0], 2 * math.pi,
                rtol=1e-12, atol=1e-12)
    assert tr.y_final == pytest.approx([1.0, 0.0], abs=1e-10)
    assert tr.t_final == pytest.approx(2 * math.pi)
    # dense output between steps
    assert tr(1.0)[0] == pytest.approx(math.cos(1.0), abs=1e-8)


def test_hook_sees_every_accepted_step():
    seen = []
    tr = dopri5(lambda t, y: -y, 0.0, [1.0], 1.0, on_step=lambda t, y, f: seen.append(t))
    assert seen == list(tr.t)


def test_blowup_time_located():
    # y' = y^2, y(0) = 1 diverges at t = 1
    with pytest.raises(BlowUpError) as info:
        dopri5(lambda t, y: y * y, 0.0, [1.0], 2.0, rtol=1e-12, atol=1e-12,
               blowup=lambda y: abs(y[0]) - 1e12)
    assert info.value.time == pytest.approx(1.0, abs=1e-9)
    lo, hi = info.value.bracket
    assert lo <= info.value.time <= hi


def test_constant_rate_integrates_exactly():
    tr = dopri5(lambda t, y: np.array([1.0]), 0.0, [0.0], 3.0)
    assert tr.y_final[0] == pytest.approx(3.0)
