"""Runs the twelve acceptance criteria; one PASS/FAIL line per criterion.

The lines are printed to the terminal even under output capture.
"""

import pytest

from swfront.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA],
                         ids=[f"{n:02d}-{name.replace(' ', '-')}" for n, name, _ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
