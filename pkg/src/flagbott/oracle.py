"""
Brute-force ground truth with sympy polynomials.

Schur polynomials are generated from semistandard tableaux and products are
expanded back into the Schur basis by peeling off the lexicographically
leading monomial. Nothing here shares code with the LR enumeration, which is
what makes it usable as a cross-check.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterator
from functools import lru_cache

import sympy

from flagbott.errors import OracleError
from flagbott.lr import SchurDecomposition
from flagbott.partitions import Partition, is_weakly_decreasing, transpose

logger = logging.getLogger(__name__)

q = sympy.Symbol("q")


def variables(k: int) -> tuple[sympy.Symbol, ...]:
    return tuple(sympy.symbols(f"x1:{k + 1}"))


def _tableau_contents(lam: Partition, k: int) -> Iterator[tuple[int, ...]]:
    """Content vectors of the semistandard tableaux of shape lam with entries <= k."""
    cells = [(i, j) for i, row in enumerate(lam.parts) for j in range(row)]
    columns = transpose(lam).parts
    filling: dict[tuple[int, int], int] = {}
    content = [0] * (k + 1)

    def fill(n: int) -> Iterator[tuple[int, ...]]:
        if n == len(cells):
            yield tuple(content[1:])
            return
        i, j = cells[n]
        low = 1
        if j > 0:
            low = filling[(i, j - 1)]
        if i > 0:
            low = max(low, filling[(i - 1, j)] + 1)
        # leave room for the strictly larger entries below in this column
        high = k - (columns[j] - 1 - i)
        for value in range(low, high + 1):
            filling[(i, j)] = value
            content[value] += 1
            yield from fill(n + 1)
            content[value] -= 1
        filling.pop((i, j), None)

    yield from fill(0)


@lru_cache(maxsize=None)
def schur_polynomial(lam: Partition, k: int) -> sympy.Poly:
    """s_lam(x_1, ..., x_k); the zero polynomial when lam has more than k rows."""
    gens = variables(k)
    if lam.length > k:
        return sympy.Poly(0, *gens)
    monomials = Counter(_tableau_contents(lam, k))
    return sympy.Poly.from_dict(dict(monomials), *gens)


def expand_in_schur_basis(p: sympy.Poly, k: int) -> SchurDecomposition:
    """
    Write a Schur-positive symmetric polynomial in the Schur basis.

    Raises:
        OracleError: a negative coefficient or a non-partition leading
            exponent shows up, so the input was not Schur positive.
    """
    remainder = p
    counts: Counter[tuple[int, ...]] = Counter()
    while not remainder.is_zero:
        monomial, coeff = remainder.terms(order="lex")[0]
        coeff = int(coeff)
        if coeff < 0:
            raise OracleError(f"negative coefficient {coeff} at x^{monomial}")
        if not is_weakly_decreasing(monomial):
            raise OracleError(f"leading exponent {monomial} is not a partition")
        counts[tuple(monomial)] += coeff
        remainder = remainder - schur_polynomial(Partition(tuple(monomial)), k) * coeff
    return SchurDecomposition.from_counts(k, counts)


def oracle_product(u: Partition, v: Partition, k: int) -> SchurDecomposition:
    """Decompose s_u * s_v in k variables."""
    logger.debug(f"oracle product {u} x {v} in {k} variables")
    return expand_in_schur_basis(schur_polynomial(u, k) * schur_polynomial(v, k), k)


@lru_cache(maxsize=None)
def _gaussian(d: int, r: int) -> sympy.Expr:
    if r == 0 or r == d:
        return sympy.Integer(1)
    return sympy.expand(_gaussian(d - 1, r) * q**r + _gaussian(d - 1, r - 1))


def gaussian_binomial(d: int, r: int) -> sympy.Poly:
    """(d choose r)_q, the generating polynomial of partitions in an r x (d - r) box."""
    if not 0 <= r <= d:
        return sympy.Poly(0, q)
    return sympy.Poly(_gaussian(d, r), q)


def gaussian_coefficients(d: int, r: int) -> list[int]:
    """Coefficients of (d choose r)_q from q^0 upward: the Betti numbers b_{2p}(G_r(C^d))."""
    return [int(c) for c in reversed(gaussian_binomial(d, r).all_coeffs())]
