"""
Littlewood-Richardson fillings and tensor products of Schur functors.

A filling numbers the cells of a skew diagram w/u with labels c1 taken from a
content partition v. Together with its companion numbering c2 (how many
earlier cells in LR order carry the same label) it becomes a map
c = (c1, c2) from the diagram to Y(v). The LR order reads the top row first,
right to left inside a row.

Usage:
    lr_product(GeneralizedPartition.of(1, 0), Partition.of(1))
    # SchurDecomposition(r=2, terms=(((2, 0), 1), ((1, 1), 1)))
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from flagbott.errors import ValidationError
from flagbott.partitions import (
    Cell,
    GeneralizedPartition,
    Partition,
    SkewShape,
    skew_cells,
)

logger = logging.getLogger(__name__)


def lr_order_less(x: Cell, y: Cell) -> bool:
    """x <_LR y: x is higher, or on the same row and further right."""
    return x[0] < y[0] or (x[0] == y[0] and x[1] > y[1])


def lr_sorted(cells: Iterable[Cell]) -> list[Cell]:
    return sorted(cells, key=lambda c: (c[0], -c[1]))


def canonical_companion(c1: Mapping[Cell, int]) -> dict[Cell, int]:
    """c2(x) = #{y <=_LR x : c1(y) = c1(x)}."""
    seen: Counter[int] = Counter()
    c2 = {}
    for x in lr_sorted(c1):
        seen[c1[x]] += 1
        c2[x] = seen[c1[x]]
    return c2


# =============================================================================
# Domain types
# =============================================================================


@dataclass(frozen=True)
class LRFilling:
    """A numbering c = (c1, c2) of a skew diagram with content ``content``."""

    shape: SkewShape
    content: Partition
    c1: Mapping[Cell, int]
    c2: Mapping[Cell, int]

    @classmethod
    def from_labels(
        cls, shape: SkewShape, content: Partition, c1: Mapping[Cell, int]
    ) -> LRFilling:
        """Build a filling whose second coordinate is the canonical companion of c1."""
        return cls(shape, content, dict(c1), canonical_companion(c1))

    def numbering(self) -> dict[Cell, tuple[int, int]]:
        return {x: (self.c1[x], self.c2[x]) for x in self.c1}

    def word(self) -> tuple[int, ...]:
        """Labels read in LR order."""
        return tuple(self.c1[x] for x in lr_sorted(self.c1))

    def has_content(self) -> bool:
        """Cells match the shape and label k occurs exactly v_k times."""
        if set(self.c1) != skew_cells(self.shape):
            return False
        wanted = {k: vk for k, vk in enumerate(self.content.parts, 1)}
        return dict(Counter(self.c1.values())) == wanted

    def is_bijective(self) -> bool:
        """(c1, c2) maps the cells one-to-one onto Y(content)."""
        targets = [(self.c1[x], self.c2.get(x)) for x in self.c1]
        return len(set(targets)) == len(targets) and set(targets) == self.content.cells()


@dataclass(frozen=True)
class SchurDecomposition:
    """
    Multiset of generalized partitions of a common length ``r``.

    Terms are kept sorted lexicographically descending so that serialized
    output is reproducible.
    """

    r: int
    terms: tuple[tuple[GeneralizedPartition, int], ...] = ()

    @classmethod
    def from_counts(
        cls, r: int, counts: Mapping[GeneralizedPartition | Sequence[int], int]
    ) -> SchurDecomposition:
        merged: Counter[tuple[int, ...]] = Counter()
        for key, mult in counts.items():
            parts = tuple(key.parts) if isinstance(key, GeneralizedPartition) else tuple(key)
            merged[parts + (0,) * (r - len(parts))] += mult
        terms = tuple(
            (GeneralizedPartition(r, parts), mult)
            for parts, mult in sorted(merged.items(), reverse=True)
            if mult
        )
        return cls(r, terms)

    def multiplicity(self, w: GeneralizedPartition | Sequence[int]) -> int:
        parts = tuple(w.parts) if isinstance(w, GeneralizedPartition) else tuple(w)
        parts = parts + (0,) * (self.r - len(parts))
        return next((m for g, m in self.terms if g.parts == parts), 0)

    def total(self) -> int:
        return sum(m for _, m in self.terms)

    def as_counter(self) -> Counter[tuple[int, ...]]:
        return Counter({g.parts: m for g, m in self.terms})

    def partition_counts(self) -> dict[Partition, int]:
        """Terms keyed by plain partitions (trailing zeros dropped)."""
        return {g.as_partition(): m for g, m in self.terms}

    def __iter__(self) -> Iterator[tuple[GeneralizedPartition, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def to_dict(self) -> dict[str, Any]:
        return {
            "terms": [{"partition": json_parts(g), "mult": m} for g, m in self.terms],
            "r": self.r,
        }


def json_parts(g: GeneralizedPartition) -> list[int]:
    """Plain partitions serialize without trailing zeros; twisted ones at full length."""
    return list(g.as_partition().parts) if g.is_partition() else list(g.parts)


# =============================================================================
# The LR rules and the eight conditions
# =============================================================================


def _monotone(values: Sequence[int], *, increasing: bool, strict: bool) -> bool:
    for a, b in zip(values, values[1:]):
        if increasing and (b < a or (strict and b == a)):
            return False
        if not increasing and (b > a or (strict and b == a)):
            return False
    return True


def _lines(cells: Iterable[Cell], axis: int) -> list[list[Cell]]:
    """Group cells into columns (axis=1) or rows (axis=0), each sorted along the other axis."""
    groups: dict[int, list[Cell]] = defaultdict(list)
    for cell in cells:
        groups[cell[axis]].append(cell)
    return [sorted(group, key=lambda c: c[1 - axis]) for _, group in sorted(groups.items())]


def check_classical(f: LRFilling) -> bool:
    """Columns strictly increasing, rows weakly increasing, lattice word in LR order."""
    for column in _lines(f.c1, axis=1):
        if not _monotone([f.c1[x] for x in column], increasing=True, strict=True):
            return False
    for row in _lines(f.c1, axis=0):
        if not _monotone([f.c1[x] for x in row], increasing=True, strict=False):
            return False
    counts: Counter[int] = Counter()
    for x in lr_sorted(f.c1):
        k = f.c1[x]
        counts[k] += 1
        if k > 1 and counts[k] > counts[k - 1]:
            return False
    return True


def satisfies_young_condition(f: LRFilling) -> bool:
    """Every C(x) = {c(y) : y <=_LR x} is a Young diagram."""
    seen: set[tuple[int, int]] = set()
    for x in lr_sorted(f.c1):
        a, b = f.c1[x], f.c2[x]
        if a < 1 or b < 1 or (a, b) in seen:
            return False
        if (a > 1 and (a - 1, b) not in seen) or (b > 1 and (a, b - 1) not in seen):
            return False
        seen.add((a, b))
    return True


def inverse_numbering(f: LRFilling) -> dict[Cell, Cell]:
    """b = c^{-1}: Y(content) -> cells of the diagram."""
    return {(f.c1[x], f.c2[x]): x for x in f.c1}


def check_eight(f: LRFilling) -> bool:
    """
    The symmetric form of the LR rules.

    On the diagram: (h) c1 strictly increasing down columns, (th) c2 weakly
    decreasing down columns, (w) c2 strictly decreasing along rows, (tw) c1
    weakly increasing along rows. On Y(v) the same four statements hold for
    b = c^{-1} with the roles of c1 and c2 taken by b1 and b2.
    """
    if not f.is_bijective():
        return False
    b = inverse_numbering(f)
    b1 = {y: b[y][0] for y in b}
    b2 = {y: b[y][1] for y in b}

    conditions = (
        (f.c1, f.c1, 1, True, True),  # (h)
        (f.c1, f.c2, 1, False, False),  # (th)
        (f.c1, f.c2, 0, False, True),  # (w)
        (f.c1, f.c1, 0, True, False),  # (tw)
        (b, b1, 1, True, True),  # (h')
        (b, b2, 1, False, False),  # (th')
        (b, b2, 0, False, True),  # (w')
        (b, b1, 0, True, False),  # (tw')
    )
    for domain, values, axis, increasing, strict in conditions:
        for line in _lines(domain, axis):
            if not _monotone([values[x] for x in line], increasing=increasing, strict=strict):
                return False
    return True


def is_height_increasing(b: Mapping[Cell, Cell]) -> bool:
    """No cell is sent to a row above its own."""
    return all(target[0] >= source[0] for source, target in b.items())


def height_increasing_bijection(source: Partition, target: Partition) -> dict[Cell, Cell] | None:
    """
    A height-increasing bijection Y(source) -> Y(target), or None.

    Lowest cells of the source go to the lowest cells of the target; if that
    assignment fails, no height-increasing bijection exists.
    """
    if source.weight != target.weight:
        return None

    def by_depth(c: Cell) -> tuple[int, int]:
        return (-c[0], c[1])

    sources = sorted(source.cells(), key=by_depth)
    targets = sorted(target.cells(), key=by_depth)
    mapping = dict(zip(sources, targets, strict=True))
    return mapping if is_height_increasing(mapping) else None


# =============================================================================
# Enumeration
# =============================================================================


def _search(
    inner: Sequence[int], content: Sequence[int], outer: Sequence[int] | None
) -> Iterator[tuple[tuple[int, ...], dict[Cell, int]]]:
    """
    Depth-first search over LR fillings in LR order.

    With ``outer`` fixed this enumerates the fillings of one skew shape;
    with ``outer=None`` each row's length is chosen on the way down, giving
    every pair (w, filling) of the product. Yields labels in lexicographic
    order of their LR-order word.
    """
    r = len(inner)
    top = len(content)
    counts = [0] * (top + 1)
    labels: dict[Cell, int] = {}
    widths: list[int] = []

    def rows_from(i: int, remaining: int) -> Iterator[tuple[tuple[int, ...], dict[Cell, int]]]:
        if i > r:
            if remaining == 0:
                yield tuple(widths), dict(labels)
            return
        lo = inner[i - 1]
        if outer is not None:
            choices: Iterable[int] = (outer[i - 1],)
        else:
            hi = lo + remaining
            if widths:
                hi = min(hi, widths[-1])
            choices = range(hi, lo - 1, -1)
        for width in choices:
            widths.append(width)
            yield from cells_from(i, width, lo, top, remaining - (width - lo))
            widths.pop()

    def cells_from(
        i: int, j: int, lo: int, ceiling: int, remaining: int
    ) -> Iterator[tuple[tuple[int, ...], dict[Cell, int]]]:
        if j == lo:
            yield from rows_from(i + 1, remaining)
            return
        above = labels.get((i - 1, j))
        floor = 1 if above is None else above + 1
        for k in range(floor, ceiling + 1):
            if counts[k] >= content[k - 1] or (k > 1 and counts[k] >= counts[k - 1]):
                continue
            counts[k] += 1
            labels[(i, j)] = k
            yield from cells_from(i, j - 1, lo, k, remaining)
            del labels[(i, j)]
            counts[k] -= 1

    yield from rows_from(1, sum(content))


def enumerate_fillings(shape: SkewShape, content: Partition) -> list[LRFilling]:
    """
    All fillings of ``shape`` with content ``content`` that satisfy the LR rules.

    Raises:
        ValidationError: the shape and the content have different sizes.
    """
    if shape.size != content.weight:
        raise ValidationError(
            f"shape has {shape.size} cells but content has weight {content.weight}",
            code="E_SIZE",
        )
    return [
        LRFilling.from_labels(shape, content, labels)
        for _, labels in _search(shape.inner.parts, content.parts, shape.outer.parts)
    ]


def iter_lr_terms(
    u: GeneralizedPartition, v: Partition
) -> Iterator[tuple[GeneralizedPartition, LRFilling]]:
    """Every (w, filling) with the filling an LR filling of w/u with content v."""
    for widths, labels in _search(u.parts, v.parts, None):
        w = GeneralizedPartition(u.r, widths)
        yield w, LRFilling.from_labels(SkewShape(w, u), v, labels)


def lr_product(u: GeneralizedPartition, v: Partition) -> SchurDecomposition:
    """
    Decompose S_u V (x) S_v V into Schur functors of length ``u.r``.

    The multiplicity of S_w is the number of LR fillings of w/u with content v.
    Terms with more than ``u.r`` rows do not occur.
    """
    counts: Counter[tuple[int, ...]] = Counter(
        widths for widths, _ in _search(u.parts, v.parts, None)
    )
    logger.debug(f"lr_product {u} x {v}: {len(counts)} outer shapes")
    return SchurDecomposition.from_counts(u.r, counts)
