"""The acceptance gate: one test per criterion, each at its stated time
budget, printing a pass/fail line per criterion."""

import time

import pytest

from multilin.acceptance import ALL_CRITERIA, BUDGETS, DEFAULT_SEED


@pytest.mark.parametrize("name,func", ALL_CRITERIA, ids=[n for n, _ in ALL_CRITERIA])
def test_criterion(name, func):
    start = time.perf_counter()
    detail = func(DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    budget = BUDGETS[name]
    print(f"PASS {name} in {elapsed:.2f}s (budget {budget}s): {detail}")
    assert elapsed < budget, f"{name} took {elapsed:.2f}s, budget {budget}s"
