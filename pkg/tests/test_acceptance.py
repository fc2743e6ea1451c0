"""The acceptance criteria, one test each, with a pass/fail line per criterion."""

import pytest

from graphexplore.claims import CLAIMS

# filled as tests run; conftest prints it in the terminal summary
RESULTS = []


@pytest.mark.parametrize("claim", CLAIMS, ids=[c.__name__.removeprefix("claim_") for c in CLAIMS])
def test_criterion(claim):
    res = claim()
    line = f"[{res.verdict}] criterion {res.id}: {res.claim} | measured: {res.measured} | bound: {res.bound} | {res.seconds:.2f}s"
    RESULTS.append(line)
    print("\n" + line)
    assert res.passed, f"criterion {res.id}: measured {res.measured}, required {res.bound}"
