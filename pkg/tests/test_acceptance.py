"""Acceptance gate: the eleven shipping criteria, one line each."""

import time

import pytest

from rtfactor.acceptance import CRITERIA, run_criterion

TIME_LIMITS = {
    "uniform-bracket-rule": 10,
    "jones-oracle": 5,
    "expansion-structure": 5,
    "deformation-cohomology": 60,
    "whitehead-vanishing": 30,
    "clifford-morita": 30,
    "character-identities": 20,
    "wheel-bernoulli": 10,
    "ribbon-axioms": 20,
    "weight-relations": 60,
    "numerical-linking": 60,
}


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1),
                         ids=[name for name, _ in CRITERIA])
def test_criterion(index):
    started = time.monotonic()
    result = run_criterion(index)
    elapsed = time.monotonic() - started
    status = "PASS" if result.ok else "FAIL"
    print(f"criterion {index:2d} {status} [{result.name}] "
          f"{result.detail} ({elapsed:.2f}s)")
    assert result.ok, result.detail
    assert elapsed < TIME_LIMITS[result.name], (
        f"{result.name} took {elapsed:.1f}s")
