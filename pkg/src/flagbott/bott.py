"""
Bott's theorem for homogeneous line bundles on flag varieties.

For a in Z^d the cohomology of the associated line bundle on the complete
flag variety of V = C^d vanishes unless a - (1, ..., d) has distinct entries
(a is admissible). Then it lives in the single degree i(a), the number of
strict inversions of a - (1, ..., d), and equals S_psi V with
psi = sort(a - (1, ..., d)) + (1, ..., d).

On the Grassmannian G_r(V) of codimension-r subspaces, with universal
quotient Q of rank r and subbundle S of rank d - r, S_w Q (x) S_v S has
Bott data of the concatenation a = (w, v). When v is the transpose of a
partition u, the same data can be read off the skew strip w/chi(u) split
into the cells Sigma+ and Sigma-; ``splitting`` and ``beta_bijection``
implement that description.

None is returned whenever all cohomology vanishes.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from flagbott.errors import InvariantViolation, ValidationError
from flagbott.partitions import (
    Cell,
    GeneralizedPartition,
    Partition,
    SkewShape,
    chi,
    is_strictly_increasing,
    reorder_decreasing,
    skew_cells,
    squared_norm,
    transpose,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Configuration
# =============================================================================

# Verify the Sigma+/Sigma- inequalities and the height property of beta
CHECK_INVARIANTS = os.getenv("FLAGBOTT_CHECK_INVARIANTS", "true").lower() == "true"


# =============================================================================
# Domain types
# =============================================================================


@dataclass(frozen=True)
class BottInput:
    """A weight a in Z^d."""

    d: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.d < 1 or len(self.a) != self.d:
            raise ValidationError(
                f"weight must have exactly d={self.d} entries, got {len(self.a)}", code="E_LENGTH"
            )

    @classmethod
    def of(cls, *a: int) -> BottInput:
        return cls(len(a), tuple(a))

    def shifted(self) -> tuple[int, ...]:
        """a - (1, ..., d)."""
        return tuple(x - i for i, x in enumerate(self.a, 1))


@dataclass(frozen=True)
class FlagShape:
    """Flag of subspaces of codimensions s_1 < ... < s_l in C^d."""

    d: int
    s: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if not self.s:
            raise ValidationError("flag needs at least one step", code="E_LENGTH")
        if not is_strictly_increasing(self.s) or self.s[0] < 1:
            raise ValidationError(
                f"flag steps must be strictly increasing and positive: {self.s}",
                code="E_NOT_STRICT",
            )
        if self.s[-1] > self.d:
            raise ValidationError(
                f"last flag step {self.s[-1]} exceeds d={self.d}", code="E_RANGE"
            )

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.s)

    def ranks(self) -> tuple[int, ...]:
        """Ranks s_k - s_{k-1} of the successive quotients Q_k."""
        return tuple(b - a for a, b in zip((0, *self.s), self.s, strict=False))

    @property
    def dimension(self) -> int:
        """Complex dimension: each quotient pairs with everything after it."""
        return sum(n * (self.d - end) for n, end in zip(self.ranks(), self.s, strict=True))

    def expand(self, a: Sequence[int]) -> tuple[int, ...]:
        """a_s padded with zeros to length d."""
        if len(a) != self.l:
            raise ValidationError(
                f"need {self.l} exponents for flag {self.s}, got {len(a)}", code="E_LENGTH"
            )
        parts: list[int] = []
        for value, rank in zip(a, self.ranks(), strict=True):
            parts.extend([value] * rank)
        return tuple(parts) + (0,) * (self.d - self.s[-1])

    def to_dict(self) -> dict[str, Any]:
        if self.l == 1:
            space = {"kind": "grassmannian", "r": self.s[0]}
        else:
            space = {"kind": "flag", "s": list(self.s)}
        return {**space, "d": self.d, "dimension": self.dimension}


@dataclass(frozen=True)
class BottResult:
    """Nonzero Bott cohomology: S_psi V in degree ``degree``."""

    degree: int
    psi: GeneralizedPartition

    def to_dict(self) -> dict[str, Any]:
        return {"admissible": True, "i": self.degree, "psi": list(self.psi.parts)}


# =============================================================================
# Bott's theorem
# =============================================================================


def _as_input(value: BottInput | Sequence[int]) -> BottInput:
    return value if isinstance(value, BottInput) else BottInput(len(value), tuple(value))


def is_admissible(weight: BottInput | Sequence[int]) -> bool:
    """Entries of a - (1, ..., d) pairwise distinct."""
    shifted = _as_input(weight).shifted()
    return len(set(shifted)) == len(shifted)


def bott(weight: BottInput | Sequence[int]) -> BottResult | None:
    """
    Bott data of a weight.

    Returns:
        BottResult(i, psi), or None when every cohomology group vanishes.
    """
    data = _as_input(weight)
    if not is_admissible(data):
        return None
    reordering = reorder_decreasing(data.shifted())
    psi = tuple(x + i for i, x in enumerate(reordering.sorted, 1))
    return BottResult(reordering.inversions, GeneralizedPartition(data.d, psi))


def bott_partial(flag: FlagShape, a: Sequence[int]) -> BottResult | None:
    """Cohomology of Q^a on a partial flag variety: Bott data of a_s."""
    return bott(BottInput(flag.d, flag.expand(a)))


def grassmann_bott(
    u: GeneralizedPartition, v: GeneralizedPartition | Sequence[int]
) -> BottResult | None:
    """S_u Q (x) S_v S on G_r(V): Bott data of the concatenation (u, v), d = r + len(v)."""
    a = tuple(u.parts) + tuple(v)
    return bott(BottInput(len(a), a))


# =============================================================================
# Crossing counts
# =============================================================================


@dataclass(frozen=True)
class CrossingData:
    """
    Bott data of (w, transpose(u)) read off from crossings alpha_i < beta_j.

    alpha_i = w_i - i and beta_j = transpose(u)_j - (r + j). ``gamma_rows[i]``
    counts the beta above alpha_i, ``gamma_columns[j]`` the alpha below beta_j.
    """

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma_rows: tuple[int, ...]
    gamma_columns: tuple[int, ...]
    s_plus: tuple[int, ...]
    s_minus: tuple[int, ...]
    degree: int

    @property
    def psi(self) -> GeneralizedPartition:
        merged = sorted(self.s_plus + self.s_minus, reverse=True)
        return GeneralizedPartition(len(merged), tuple(merged))

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "gamma_rows": list(self.gamma_rows),
            "gamma_columns": list(self.gamma_columns),
            "s_plus": list(self.s_plus),
            "s_minus": list(self.s_minus),
            "i": self.degree,
            "psi": list(self.psi.parts),
        }


def bott_by_crossings(w: GeneralizedPartition, u: Partition, d: int) -> CrossingData | None:
    """
    Bott data of S_w Q (x) S_{transpose(u)} S on G_r(C^d) by counting crossings.

    s_plus = w + gamma_rows, s_minus = transpose(u) - gamma_columns,
    i = |s_plus| - |w| and psi = sort(s_plus, s_minus). Independent of
    ``bott``: nothing is sorted and no inversions are counted.

    Raises:
        ValidationError: transpose(u) has more than d - r parts.
    """
    r = w.r
    rank_s = d - r
    u_t = transpose(u)
    if rank_s < 0 or u_t.length > rank_s:
        raise ValidationError(
            f"transpose of {u} has {u_t.length} parts but the subbundle has rank {rank_s}",
            code="E_LENGTH",
        )
    alpha = tuple(w.part(i) - i for i in range(1, r + 1))
    beta = tuple(u_t.part(j) - (r + j) for j in range(1, rank_s + 1))
    if set(alpha) & set(beta):
        return None
    gamma_rows = tuple(sum(1 for b in beta if a < b) for a in alpha)
    gamma_columns = tuple(sum(1 for a in alpha if a < b) for b in beta)
    s_plus = tuple(x + g for x, g in zip(w.parts, gamma_rows, strict=True))
    s_minus = tuple(u_t.part(j) - g for j, g in enumerate(gamma_columns, 1))
    return CrossingData(
        alpha, beta, gamma_rows, gamma_columns, s_plus, s_minus, sum(s_plus) - w.weight
    )


# =============================================================================
# Splitting of w/chi(u)
# =============================================================================


def _beta_versus_alpha(u_t: Partition, r: int, i: int, j: int, w_i: int) -> int:
    """Sign of beta_{1-j} - alpha_i; beta counts as +infinity at positive widths."""
    if j >= 1:
        return 1
    k = 1 - j
    beta = u_t.part(k) - (r + k)
    alpha = w_i - i
    return (beta > alpha) - (beta < alpha)


@dataclass(frozen=True)
class SplitDiagram:
    """The cells of w/chi(u) sorted into Sigma+ and Sigma-."""

    shape: SkewShape
    u: Partition
    sigma_plus: frozenset[Cell]
    sigma_minus: frozenset[Cell]

    @property
    def r(self) -> int:
        return self.shape.r

    def is_admissible(self) -> bool:
        return len(self.sigma_plus) + len(self.sigma_minus) == self.shape.size

    def row_counts(self) -> tuple[int, ...]:
        """Number of Sigma+ cells on each row; equals s_plus."""
        rows = Counter(i for i, _ in self.sigma_plus)
        return tuple(rows[i] for i in range(1, self.r + 1))

    def minus_column(self, width: int) -> int:
        """Number of Sigma- cells of the given width."""
        return sum(1 for _, j in self.sigma_minus if j == width)

    def column_counts(self) -> tuple[int, ...]:
        """Sigma- column sizes read from width 0 leftwards; equals s_minus."""
        return tuple(self.minus_column(1 - k) for k in range(1, self.u.part(1) + 1))

    @property
    def degree(self) -> int:
        return self.u.weight - len(self.sigma_minus)

    def merged_parts(self) -> tuple[int, ...]:
        return tuple(sorted(self.row_counts() + self.column_counts(), reverse=True))

    def check_inequalities(self) -> list[str]:
        """
        Row/column comparisons between Sigma+ and Sigma-.

        A Sigma- cell's column is never longer than its row's Sigma+ part, and
        a Sigma+ cell at width <= 0 has a row part no longer than the Sigma-
        column through it.
        """
        rows = self.row_counts()
        violations = []
        for i, j in sorted(self.sigma_minus):
            column, row = self.minus_column(j), rows[i - 1]
            if column > row:
                violations.append(f"Sigma- cell {(i, j)}: column {column} > row {row}")
        for i, j in sorted(self.sigma_plus):
            column, row = self.minus_column(j), rows[i - 1]
            if j <= 0 and row > column:
                violations.append(f"Sigma+ cell {(i, j)}: row {row} > column {column}")
        return violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "cells": self.shape.size,
            "sigma_plus": len(self.sigma_plus),
            "sigma_minus": len(self.sigma_minus),
            "s_plus": list(self.row_counts()),
            "s_minus": list(self.column_counts()),
            "i": self.degree,
        }


def splitting(w: GeneralizedPartition, u: Partition) -> SplitDiagram | None:
    """
    Split the cells of w/chi(u) by the sign of beta_{1-j} - alpha_i.

    Returns:
        The split diagram, or None when some cell has beta_{1-j} = alpha_i
        (the weight (w, transpose(u)) is not admissible).

    Raises:
        ValidationError: u has more than r parts or chi(u) is not inside w.
        InvariantViolation: the row/column inequalities fail.
    """
    r = w.r
    inner = chi(u.as_generalized(r))
    shape = SkewShape(w, inner)
    u_t = transpose(u)
    plus: set[Cell] = set()
    minus: set[Cell] = set()
    for i, j in skew_cells(shape):
        sign = _beta_versus_alpha(u_t, r, i, j, w.part(i))
        if sign == 0:
            logger.debug(f"splitting {w} / chi({u}): tie at cell {(i, j)}")
            return None
        (plus if sign > 0 else minus).add((i, j))
    split = SplitDiagram(shape, u, frozenset(plus), frozenset(minus))
    if CHECK_INVARIANTS:
        violations = split.check_inequalities()
        if violations:
            raise InvariantViolation("; ".join(violations))
    return split


def beta_bijection(split: SplitDiagram) -> dict[Cell, Cell]:
    """
    Map the cells of Sigma+ and Sigma- onto Y(psi).

    Row i of Sigma+ and the Sigma- column at width 1 - k become rows of
    Y(psi) in the order of a stable decreasing sort of
    (row_counts, column_counts), Sigma+ rows listed first. Cells keep their
    order along the row (by width) or the column (by height).
    """
    entries = [(n, ("plus", i)) for i, n in enumerate(split.row_counts(), 1)]
    entries += [(n, ("minus", k)) for k, n in enumerate(split.column_counts(), 1)]
    order = sorted(range(len(entries)), key=lambda e: -entries[e][0])
    position = {entries[e][1]: pos for pos, e in enumerate(order, 1)}

    mapping: dict[Cell, Cell] = {}
    for i in range(1, split.r + 1):
        row = sorted(j for a, j in split.sigma_plus if a == i)
        for t, j in enumerate(row, 1):
            mapping[(i, j)] = (position[("plus", i)], t)
    for k in range(1, split.u.part(1) + 1):
        column = sorted(a for a, j in split.sigma_minus if j == 1 - k)
        for t, i in enumerate(column, 1):
            mapping[(i, 1 - k)] = (position[("minus", k)], t)

    if CHECK_INVARIANTS and any(target[0] < source[0] for source, target in mapping.items()):
        raise InvariantViolation(f"beta for {split.shape.outer} is not height increasing")
    return mapping


# =============================================================================
# Norm inequality
# =============================================================================


def norm_gain_holds(u: Partition, v: Partition, w: GeneralizedPartition, d: int) -> bool | None:
    """
    Check one LR term w of chi(u) (x) v against the norm inequality.

    With rho = psi(w, transpose(u)) and i its degree: either u = 0 and
    rho = v, or |u| + i + 1 + ||v||^2 <= ||rho||^2.

    Returns:
        None when (w, transpose(u)) is not admissible.
    """
    result = grassmann_bott(w, transpose(u).padded(d - w.r))
    if result is None:
        return None
    rho = result.psi.as_partition()
    if u.is_zero() and rho == v:
        return True
    return u.weight + result.degree + 1 + squared_norm(v) <= squared_norm(rho)
