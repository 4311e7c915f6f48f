"""
Partitions, generalized partitions and skew diagrams.

Cells are ``(i, j)`` pairs where ``i`` is the height (row, counted from 1 at
the top) and ``j`` the width (column). Diagrams of generalized partitions are
infinite to the left; only finite strips between two shapes are ever built,
so widths in a skew diagram may be zero or negative.

Usage:
    u = Partition.of(4, 2, 1)
    transpose(u)                      # Partition((3, 2, 1, 1))
    w = parse_generalized("5,4,3,2,-1,-2")
    skew_cells(SkewShape(w, chi(Partition.of(7, 7, 4, 3, 3, 1).as_generalized(6))))
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple

from flagbott.errors import ParseError, ValidationError

logger = logging.getLogger(__name__)

Cell = tuple[int, int]


def is_weakly_decreasing(values: Sequence[int]) -> bool:
    return all(values[k] >= values[k + 1] for k in range(len(values) - 1))


def is_strictly_decreasing(values: Sequence[int]) -> bool:
    return all(values[k] > values[k + 1] for k in range(len(values) - 1))


def is_strictly_increasing(values: Sequence[int]) -> bool:
    return all(values[k] < values[k + 1] for k in range(len(values) - 1))


# =============================================================================
# Domain types
# =============================================================================


@dataclass(frozen=True, order=True)
class Partition:
    """
    Weakly decreasing sequence of nonnegative integers.

    Trailing zeros are dropped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))`` and the empty tuple is the zero partition.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not is_weakly_decreasing(parts):
            raise ValidationError(
                f"partition parts must be weakly decreasing: {parts}", code="E_NOT_DECREASING"
            )
        if parts and parts[-1] < 0:
            raise ValidationError(
                f"partition parts must be nonnegative: {parts}", code="E_NEGATIVE_PART"
            )
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def part(self, i: int) -> int:
        """1-based part access; zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def padded(self, r: int) -> tuple[int, ...]:
        """The parts followed by zeros up to length ``r``."""
        if self.length > r:
            raise ValidationError(
                f"partition {self} has more than {r} parts", code="E_LENGTH"
            )
        return self.parts + (0,) * (r - self.length)

    def as_generalized(self, r: int) -> GeneralizedPartition:
        return GeneralizedPartition(r, self.padded(r))

    def cells(self) -> frozenset[Cell]:
        """The Young diagram Y(u)."""
        return frozenset((i, j) for i, row in enumerate(self.parts, 1) for j in range(1, row + 1))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return format_partition(self)


@dataclass(frozen=True, order=True)
class GeneralizedPartition:
    """
    Weakly decreasing integer sequence of declared length ``r``.

    Parts may be negative. ``r`` is significant: ``(0, 0)`` and ``(0, 0, 0)``
    are different objects, and no trailing zeros are ever dropped.
    """

    r: int
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if self.r < 1:
            raise ValidationError(
                f"declared length must be positive, got {self.r}", code="E_LENGTH"
            )
        if len(parts) != self.r:
            raise ValidationError(
                f"expected {self.r} parts, got {len(parts)}: {parts}", code="E_LENGTH"
            )
        if not is_weakly_decreasing(parts):
            raise ValidationError(
                f"generalized partition must be weakly decreasing: {parts}",
                code="E_NOT_DECREASING",
            )
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> GeneralizedPartition:
        return cls(len(parts), tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        return self.parts[i - 1]

    def shifted(self, k: int) -> GeneralizedPartition:
        """Add ``k`` to every part (twist by the k-th power of the determinant)."""
        return GeneralizedPartition(self.r, tuple(x + k for x in self.parts))

    def is_partition(self) -> bool:
        return self.parts[-1] >= 0

    def as_partition(self) -> Partition:
        if not self.is_partition():
            raise ValidationError(
                f"{format_partition(self)} has negative parts", code="E_NEGATIVE_PART"
            )
        return Partition(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return self.r

    def __str__(self) -> str:
        return format_partition(self)


@dataclass(frozen=True)
class SkewShape:
    """The finite strip D(outer) minus D(inner) of two generalized partitions."""

    outer: GeneralizedPartition
    inner: GeneralizedPartition

    def __post_init__(self):
        if self.outer.r != self.inner.r:
            raise ValidationError(
                f"outer has length {self.outer.r}, inner has length {self.inner.r}",
                code="E_LENGTH",
            )
        for i, (o, n) in enumerate(zip(self.outer.parts, self.inner.parts, strict=True), 1):
            if n > o:
                raise ValidationError(
                    f"inner shape not contained in outer shape at row {i}: {n} > {o}",
                    code="E_NOT_CONTAINED",
                )

    @classmethod
    def of_partitions(cls, outer: Partition, inner: Partition | None = None) -> SkewShape:
        """Skew shape of two plain partitions, with r the length of ``outer``."""
        r = max(outer.length, 1)
        inner = inner or Partition()
        return cls(outer.as_generalized(r), inner.as_generalized(r))

    @property
    def r(self) -> int:
        return self.outer.r

    @property
    def size(self) -> int:
        return self.outer.weight - self.inner.weight

    def row_range(self, i: int) -> range:
        """Widths of the cells in row ``i``."""
        return range(self.inner.part(i) + 1, self.outer.part(i) + 1)

    def __contains__(self, cell: Cell) -> bool:
        i, j = cell
        return 1 <= i <= self.r and self.inner.part(i) < j <= self.outer.part(i)


# =============================================================================
# Operations
# =============================================================================


def transpose(u: Partition) -> Partition:
    """Reflect the Young diagram across its diagonal: result_j = #{i : u_i >= j}."""
    return Partition(tuple(sum(1 for x in u.parts if x >= j) for j in range(1, u.part(1) + 1)))


def squared_norm(u: Partition) -> int:
    """||u||^2, the sum of the squared column lengths of Y(u)."""
    return sum(c * c for c in transpose(u).parts)


def chi(u: GeneralizedPartition) -> GeneralizedPartition:
    """Reversal (-u_r, ..., -u_1); the weight of the dual representation."""
    return GeneralizedPartition(u.r, tuple(-x for x in reversed(u.parts)))


def dominates(first: Partition, second: Partition) -> bool:
    """
    True iff ``first`` dominates ``second``.

    Equal weights compare prefix sums directly. Unequal weights compare
    ``|second| * first`` against ``|first| * second``, which keeps the test in
    integer arithmetic.

    Raises:
        ValidationError: unequal weights with one side the zero partition.
    """
    w1, w2 = first.weight, second.weight
    if w1 == w2:
        scale1 = scale2 = 1
    else:
        if w1 == 0 or w2 == 0:
            raise ValidationError(
                "dominance between partitions of different weight needs nonzero partitions",
                code="E_ZERO_PARTITION",
            )
        scale1, scale2 = w2, w1

    prefix1 = prefix2 = 0
    for k in range(1, max(first.length, second.length) + 1):
        prefix1 += scale1 * first.part(k)
        prefix2 += scale2 * second.part(k)
        if prefix1 < prefix2:
            return False
    return True


def equivalent(first: Partition, second: Partition) -> bool:
    """Dominance in both directions (``(k)`` and ``(1)`` are equivalent)."""
    return dominates(first, second) and dominates(second, first)


class Reordering(NamedTuple):
    sorted: tuple[int, ...]
    inversions: int
    placement: tuple[int, ...]


def reorder_decreasing(a: Sequence[int]) -> Reordering:
    """
    Weakly decreasing rearrangement of ``a``.

    ``inversions`` counts pairs i < j with a[i] < a[j]. ``placement[k]`` is the
    index in ``a`` of ``sorted[k]``; equal entries keep their relative order,
    which is the rearrangement with the fewest transpositions.
    """
    values = tuple(a)
    placement = tuple(sorted(range(len(values)), key=lambda k: -values[k]))
    inversions = sum(
        1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] < values[j]
    )
    return Reordering(tuple(values[k] for k in placement), inversions, placement)


def reconstruct(a: Sequence[int], s: Sequence[int]) -> GeneralizedPartition:
    """
    Block form a_s: value a_k repeated s_k - s_{k-1} times.

    Args:
        a: strictly decreasing values
        s: strictly increasing positive block ends

    Returns:
        Generalized partition of length s_l.
    """
    a, s = tuple(a), tuple(s)
    if not a or len(a) != len(s):
        raise ValidationError(
            f"need equally long nonempty sequences, got a={a}, s={s}", code="E_LENGTH"
        )
    if not is_strictly_decreasing(a):
        raise ValidationError(f"a must be strictly decreasing: {a}", code="E_NOT_STRICT")
    if not is_strictly_increasing(s) or s[0] < 1:
        raise ValidationError(
            f"s must be strictly increasing and positive: {s}", code="E_NOT_STRICT"
        )
    parts: list[int] = []
    previous = 0
    for value, end in zip(a, s, strict=True):
        parts.extend([value] * (end - previous))
        previous = end
    return GeneralizedPartition(s[-1], tuple(parts))


def distinct_decreasing(u: Partition) -> tuple[int, ...]:
    """u^>: the distinct nonzero parts, largest first."""
    return tuple(sorted(set(u.parts), reverse=True))


def distinct_increasing(u: Partition) -> tuple[int, ...]:
    """u^<: the distinct nonzero parts, smallest first."""
    return tuple(sorted(set(u.parts)))


def skew_cells(shape: SkewShape) -> frozenset[Cell]:
    """All cells (i, j) with inner_i < j <= outer_i."""
    return frozenset((i, j) for i in range(1, shape.r + 1) for j in shape.row_range(i))


# =============================================================================
# Enumeration
# =============================================================================


def iter_partitions(
    n: int, max_length: int | None = None, max_part: int | None = None
) -> Iterator[Partition]:
    """
    All partitions of ``n``, optionally inside a box, in reverse lexicographic order.

    Example:
        [p.parts for p in iter_partitions(3)] == [(3,), (2, 1), (1, 1, 1)]
    """
    if n < 0:
        return
    slots = n if max_length is None else max_length
    cap = n if max_part is None else max_part

    def extend(remaining: int, largest: int, free: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if free == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            # the rest must fit into the free rows
            if first * free < remaining:
                break
            for rest in extend(remaining - first, first, free - 1):
                yield (first, *rest)

    for parts in extend(n, cap, slots):
        yield Partition(parts)


def partitions_in_box(rows: int, cols: int) -> Iterator[Partition]:
    """Every partition fitting in a rows x cols box, by increasing weight."""
    for n in range(rows * cols + 1):
        yield from iter_partitions(n, max_length=rows, max_part=cols)


# =============================================================================
# Canonical text form
# =============================================================================


def parse_integers(text: str) -> tuple[int, ...]:
    """Parse ``"5,4,-1"`` (optionally parenthesized) into a tuple of ints."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1].strip()
    if not body:
        return ()
    values = []
    for token in body.split(","):
        token = token.strip()
        try:
            values.append(int(token))
        except ValueError as e:
            raise ParseError(f"not an integer: {token!r} in {text!r}", original=e) from e
    return tuple(values)


def parse_partition(text: str) -> Partition:
    return Partition(parse_integers(text))


def parse_generalized(text: str, r: int | None = None) -> GeneralizedPartition:
    """
    Parse ``"5,4,-1;r=3"`` or a plain list.

    A plain list shorter than ``r`` is padded with zeros. When both the text
    and the argument declare a length they must agree.
    """
    body, _, suffix = text.partition(";")
    declared = r
    if suffix:
        key, _, value = suffix.strip().partition("=")
        if key.strip() != "r":
            raise ParseError(f"unknown suffix {suffix!r} in {text!r}")
        try:
            declared = int(value)
        except ValueError as e:
            raise ParseError(f"bad length in {text!r}", original=e) from e
        if r is not None and declared != r:
            raise ValidationError(
                f"{text!r} declares r={declared}, expected r={r}", code="E_LENGTH"
            )
    parts = parse_integers(body)
    if declared is None:
        declared = len(parts)
    if len(parts) < declared:
        parts = parts + (0,) * (declared - len(parts))
    return GeneralizedPartition(declared, parts)


def format_partition(u: Partition | GeneralizedPartition | Iterable[int]) -> str:
    """Canonical text: ``"4,2,1"``, ``"0"`` for zero, ``"...;r=6"`` when generalized."""
    if isinstance(u, GeneralizedPartition):
        return ",".join(str(x) for x in u.parts) + f";r={u.r}"
    parts = tuple(u)
    return ",".join(str(x) for x in parts) if parts else "0"
