"""Acceptance gate: every criterion of the full suite, one test each.

Each test prints its own pass/fail line so that ``pytest -s`` (or the CLI
``ncspheres verify --suite paper``) shows the per-criterion table.  All
tolerances are pinned inside the criterion implementations: exact integer
or rational equality for the algebraic identities, 1e-10 for floating
point residuals on unit-norm data, and three standard errors for the
seeded Monte Carlo comparison.
"""

import time

import pytest

from ncspheres.verify import CRITERIA

BUDGETS = {
    # stated runtime budgets, in seconds
    "weingarten_closed_forms": 1.0,
    "scalar_products": 30.0,
    "functoriality": 60.0,
    "classification": 300.0,
}


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_criterion(name, fn):
    start = time.perf_counter()
    passed, detail = fn(quick=False)
    elapsed = time.perf_counter() - start
    print(f"{'PASS' if passed else 'FAIL'} {name}: {detail} [{elapsed:.1f}s]")
    assert passed, f"{name}: {detail}"
    if name in BUDGETS:
        assert elapsed < BUDGETS[name], f"{name} exceeded its {BUDGETS[name]}s budget"


def test_quick_suite_runs_under_a_minute():
    from ncspheres.verify import run_suite

    start = time.perf_counter()
    results, _ = run_suite("quick")
    elapsed = time.perf_counter() - start
    assert all(r.passed for r in results)
    assert elapsed < 60.0
