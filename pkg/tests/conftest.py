"""Shared fixtures and closed-form reference values."""

from math import comb

import pytest

from flagbott import cohomology


def projective_hodge(n: int, k: int, p: int, q: int) -> int:
    """h^q(P^n, Omega^p(k)) from the classical closed formula."""
    if q == 0:
        if k == 0 and p == 0:
            return 1
        return comb(k + n - p, k) * comb(k - 1, p) if k > p else 0
    if q == n:
        if k == 0 and p == n:
            return 1
        return comb(-k + p, -k) * comb(-k - 1, n - p) if k < p - n else 0
    return 1 if k == 0 and p == q else 0


@pytest.fixture(autouse=True)
def fresh_memo():
    cohomology.clear_cache()
    yield
    cohomology.clear_cache()


@pytest.fixture(name="projective_hodge")
def projective_hodge_fixture():
    return projective_hodge
