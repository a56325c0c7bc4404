"""The ten acceptance criteria, one test each, at their stated limits.

Each test prints its PASS/FAIL line; the lines are repeated together in the
terminal summary (see conftest.py).
"""
import pytest

from artifact.acceptance import CRITERIA

RESULTS = {}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number]()
    RESULTS[number] = result.line()
    print(result.line())
    assert result.ok, result.detail
