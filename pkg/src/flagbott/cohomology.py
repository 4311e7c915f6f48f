"""
Dolbeault cohomology tables H^{p,q} on Grassmannians and partial flag varieties.

On G_r(V), with Q of rank r and S of rank d - r,
Omega^p = sum over partitions u of p in an r x (d - r) box of S_u Q* (x) S_{u~} S.
Tensoring with S_v Q, decomposing S_{chi(u)} Q (x) S_v Q by Littlewood-Richardson
and applying Bott to every (w, u~) gives the whole table.

Partial flags F_s(V) are handled by recursion along F_s(V) -> G_{s_l}(V):
the fibre is F_{s'}(Q) with s' = (s_1, ..., s_{l-1}), and
Q^a = (det Q)^{a_l} (x) Q^{a'} with a'_k = a_k - a_l. Each fibre term S_rho' Q
is twisted by a_l and pushed through the Grassmannian table. Tables for
l >= 2 are reported as this direct sum (``exact`` is False).

Usage:
    table = grassmann_cohomology(2, 4, Partition())
    table_dimensions(table)  # {(0, 0): 1, (1, 1): 1, (2, 2): 2, (3, 3): 1, (4, 4): 1}
"""

from __future__ import annotations

import logging
import math
import os
from collections import Counter, defaultdict
from collections.abc import Iterator, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import accumulate
from types import MappingProxyType
from typing import Any

from flagbott.bott import FlagShape, grassmann_bott
from flagbott.errors import InvariantViolation, ValidationError
from flagbott.lr import SchurDecomposition, json_parts, lr_product
from flagbott.partitions import (
    GeneralizedPartition,
    Partition,
    chi,
    is_strictly_decreasing,
    iter_partitions,
    squared_norm,
    transpose,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Configuration
# =============================================================================

# Worker threads for the p-levels of a Grassmannian table (1 = sequential)
THREADS = max(1, int(os.getenv("FLAGBOTT_THREADS", "1")))

# Assert the dominance and norm properties on every computed table
CHECK_INVARIANTS = os.getenv("FLAGBOTT_CHECK_INVARIANTS", "true").lower() == "true"

# Grassmannian tables kept in memory, least recently used evicted first
MEMO_SIZE = max(1, int(os.getenv("FLAGBOTT_MEMO_SIZE", "256")))


# =============================================================================
# Domain types
# =============================================================================

Bidegree = tuple[int, int]


@dataclass(frozen=True)
class CohomologyTable:
    """
    H^{p,q} of a Schur-type bundle, one SchurDecomposition of V per bidegree.

    ``space`` is a FlagShape; a single step s = (r,) is the Grassmannian
    G_r(C^d). Empty bidegrees are not stored.
    """

    d: int
    space: FlagShape
    bundle: tuple[int, ...]
    entries: Mapping[Bidegree, SchurDecomposition] = field(default_factory=dict)
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def get(self, p: int, q: int) -> SchurDecomposition:
        return self.entries.get((p, q), SchurDecomposition(self.d))

    def terms(self) -> Iterator[tuple[int, int, GeneralizedPartition, int]]:
        for (p, q), decomposition in sorted(self.entries.items()):
            for psi, mult in decomposition:
                yield p, q, psi, mult

    def dims(self) -> dict[Bidegree, int]:
        return table_dimensions(self)

    def to_dict(self, dims_only: bool = False) -> dict[str, Any]:
        dims = self.dims()
        entries = []
        for (p, q), decomposition in sorted(self.entries.items()):
            entry: dict[str, Any] = {"p": p, "q": q}
            if not dims_only:
                entry["terms"] = [
                    {"partition": json_parts(psi), "mult": m} for psi, m in decomposition
                ]
            entry["dim"] = dims[(p, q)]
            entries.append(entry)
        return {"space": self.space.to_dict(), "bundle": list(self.bundle), "exact": self.exact,
                "entries": entries}


def _decompositions(
    d: int, counts: Mapping[Bidegree, Counter]
) -> dict[Bidegree, SchurDecomposition]:
    table = {}
    for key in sorted(counts):
        decomposition = SchurDecomposition.from_counts(d, counts[key])
        if len(decomposition):
            table[key] = decomposition
    return table


# =============================================================================
# Grassmannians
# =============================================================================


def omega_decomposition(r: int, rank_s: int, p: int) -> list[Partition]:
    """Partitions u of p with at most r rows and at most rank_s columns."""
    if p < 0:
        return []
    return list(iter_partitions(p, max_length=r, max_part=rank_s))


def _as_bundle(r: int, v: Partition | GeneralizedPartition) -> GeneralizedPartition:
    if isinstance(v, Partition):
        return v.as_generalized(r)
    if v.r != r:
        raise ValidationError(f"bundle {v} has length {v.r}, Q has rank {r}", code="E_LENGTH")
    return v


def _grassmann_level(r: int, d: int, v: GeneralizedPartition, p: int) -> dict[int, Counter]:
    """Terms of H^{p,*}(G_r(C^d), S_v Q) keyed by q."""
    rank_s = d - r
    twist = v.part(r)
    base = Partition(tuple(x - twist for x in v.parts))
    level: dict[int, Counter] = defaultdict(Counter)
    for u in omega_decomposition(r, rank_s, p):
        s_side = transpose(u).padded(rank_s)
        for w, mult in lr_product(chi(u.as_generalized(r)), base):
            result = grassmann_bott(w.shifted(twist), s_side)
            if result is None:
                continue
            level[result.degree][result.psi.parts] += mult
    logger.debug(f"G_{r}(C^{d}), v={v}, p={p}: {sum(len(c) for c in level.values())} terms")
    return level


def clear_cache() -> None:
    _grassmann_table.cache_clear()


def grassmann_cohomology(
    r: int, d: int, v: Partition | GeneralizedPartition
) -> CohomologyTable:
    """
    Full table H^{p,q}(G_r(C^d), S_v Q).

    Args:
        r: rank of Q (1 <= r <= d)
        d: dimension of V
        v: partition with at most r rows, or a generalized partition of length r

    Raises:
        ValidationError: r out of range or v longer than r.
        InvariantViolation: a term of a partition-valued v breaks dominance.
    """
    if not 1 <= r <= d:
        raise ValidationError(f"need 1 <= r <= d, got r={r}, d={d}", code="E_RANGE")
    return _grassmann_table(r, d, _as_bundle(r, v))


@lru_cache(maxsize=MEMO_SIZE)
def _grassmann_table(r: int, d: int, bundle: GeneralizedPartition) -> CohomologyTable:
    logger.debug(f"computing G_{r}(C^{d}) table for {bundle}")
    levels = range(r * (d - r) + 1)
    counts: dict[Bidegree, Counter] = defaultdict(Counter)
    if THREADS > 1:
        with ThreadPoolExecutor(max_workers=THREADS) as executor:
            futures = {executor.submit(_grassmann_level, r, d, bundle, p): p for p in levels}
            for future in as_completed(futures):
                p = futures[future]
                for q, terms in future.result().items():
                    counts[(p, q)].update(terms)
    else:
        for p in levels:
            for q, terms in _grassmann_level(r, d, bundle, p).items():
                counts[(p, q)].update(terms)

    table = CohomologyTable(d, FlagShape(d, (r,)), bundle.parts, _decompositions(d, counts))
    if CHECK_INVARIANTS and bundle.is_partition():
        check_grassmann_terms(table, bundle.as_partition())
    return table


def _dominated_by(rho: Sequence[int], v: Sequence[int]) -> bool:
    """Prefix sums of rho never exceed those of v (equal lengths)."""
    return all(a <= b for a, b in zip(accumulate(rho), accumulate(v), strict=True))


def check_grassmann_terms(table: CohomologyTable, v: Partition) -> None:
    """
    Every term rho has |rho| = |v| and rho dominated by v; when v has
    exactly r rows, rho = v happens only at (0, 0).
    """
    r = table.space.s[0]
    target = v.padded(table.d)
    for p, q, psi, _ in table.terms():
        if psi.weight != v.weight:
            raise InvariantViolation(f"H^{p},{q}: |{psi}| != |{v}|")
        if not _dominated_by(psi.parts, target):
            raise InvariantViolation(f"H^{p},{q}: {psi} not dominated by {v}")
        if v.length == r and psi.parts == target and (p, q) != (0, 0):
            raise InvariantViolation(f"H^{p},{q}: S_v V occurs away from (0, 0) for v={v}")


# =============================================================================
# Partial flags
# =============================================================================


def _flag_level(flag: FlagShape, a: tuple[int, ...], P: int) -> dict[Bidegree, Counter]:
    if flag.l == 1:
        r = flag.s[0]
        table = grassmann_cohomology(r, flag.d, GeneralizedPartition(r, (a[0],) * r))
        return {key: dec.as_counter() for key, dec in table.entries.items() if key[0] == P}

    r = flag.s[-1]
    fibre = FlagShape(r, flag.s[:-1])
    twist = a[-1]
    fibre_a = tuple(x - twist for x in a[:-1])
    counts: dict[Bidegree, Counter] = defaultdict(Counter)
    for p_base in range(P + 1):
        for (_, j), terms in _flag_level(fibre, fibre_a, P - p_base).items():
            for parts, mult in terms.items():
                twisted = GeneralizedPartition(r, tuple(x + twist for x in parts))
                base = grassmann_cohomology(r, flag.d, twisted)
                for (p, q), decomposition in base.entries.items():
                    if p != p_base:
                        continue
                    for psi, m in decomposition:
                        counts[(P, q + j)][psi.parts] += mult * m
    return counts


def flag_cohomology(flag: FlagShape, a: Sequence[int], P: int) -> CohomologyTable:
    """
    The slice H^{P,*}(F_s(C^d), Q^a).

    Raises:
        ValidationError: a is not strictly decreasing, has the wrong length,
            or P is negative.
        InvariantViolation: a term breaks the dominance or norm inequalities.
    """
    a = tuple(int(x) for x in a)
    if len(a) != flag.l:
        raise ValidationError(f"need {flag.l} exponents for flag {flag.s}, got {len(a)}",
                              code="E_LENGTH")
    if not is_strictly_decreasing(a):
        raise ValidationError(f"a must be strictly decreasing: {a}", code="E_NOT_STRICT")
    if P < 0:
        raise ValidationError(f"P must be nonnegative, got {P}", code="E_RANGE")

    counts = _flag_level(flag, a, P) if P <= flag.dimension else {}
    table = CohomologyTable(
        flag.d, flag, flag.expand(a), _decompositions(flag.d, counts), exact=flag.l == 1
    )
    logger.debug(f"F_{flag.s}(C^{flag.d}), a={a}, P={P}: {len(table.entries)} bidegrees")
    if CHECK_INVARIANTS:
        check_flag_terms(table, a)
    return table


def flag_checks_apply(flag: FlagShape, a: Sequence[int]) -> bool:
    """
    Whether the dominance and norm inequalities are expected for Q^a.

    They need a_s to be a partition not pulled back from a coarser flag:
    a_l >= 1, or a_l = 0 with s_l = d.
    """
    last = a[-1]
    return last >= 1 or (last == 0 and flag.s[-1] == flag.d)


def check_flag_terms(table: CohomologyTable, a: Sequence[int]) -> None:
    """
    At P = 0 the table is S_{a_s} V in degree 0. At P != 0 every term rho
    satisfies rho strictly dominated by a_s and P + q + 1 + ||a_s||^2 <= ||rho||^2.
    """
    if not flag_checks_apply(table.space, a):
        return
    target = Partition(table.bundle)
    for p, q, psi, mult in table.terms():
        if p == 0:
            if (q, psi.parts, mult) != (0, table.bundle, 1):
                raise InvariantViolation(f"H^0,{q}: unexpected term {psi} x{mult}")
            continue
        if not psi.is_partition() or not _dominated_by(psi.parts, table.bundle):
            raise InvariantViolation(f"H^{p},{q}: {psi} not dominated by {target}")
        if psi.parts == table.bundle:
            raise InvariantViolation(f"H^{p},{q}: S_(a_s) V occurs at p != 0")
        rho = psi.as_partition()
        if p + q + 1 + squared_norm(target) > squared_norm(rho):
            raise InvariantViolation(
                f"H^{p},{q}: {p}+{q}+1+||{target}||^2 > ||{rho}||^2"
            )


# =============================================================================
# Dimensions
# =============================================================================


def dim_schur(lam: GeneralizedPartition | Sequence[int], d: int | None = None) -> int:
    """
    dim S_lam C^d by the Weyl dimension formula.

    A determinant twist does not change the dimension, so negative parts
    are fine.
    """
    parts = tuple(lam.parts) if isinstance(lam, GeneralizedPartition) else tuple(lam)
    d = len(parts) if d is None else d
    if len(parts) > d:
        raise ValidationError(f"{parts} is longer than d={d}", code="E_LENGTH")
    if parts and parts[-1] < 0 and len(parts) < d:
        raise ValidationError(f"{parts} needs all {d} parts when negative", code="E_LENGTH")
    lam = GeneralizedPartition(d, parts + (0,) * (d - len(parts)))
    pairs = [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    numerator = math.prod(lam.part(i) - lam.part(j) + j - i for i, j in pairs)
    denominator = math.prod(j - i for i, j in pairs)
    return numerator // denominator


def table_dimensions(table: CohomologyTable) -> dict[Bidegree, int]:
    return {
        key: sum(mult * dim_schur(psi, table.d) for psi, mult in decomposition)
        for key, decomposition in sorted(table.entries.items())
    }


def hodge_numbers(r: int, d: int) -> dict[Bidegree, int]:
    """h^{p,q}(G_r(C^d)) from the trivial-bundle table."""
    return table_dimensions(grassmann_cohomology(r, d, Partition()))


def euler_characteristic(table: CohomologyTable) -> int:
    return sum((-1) ** (p + q) * n for (p, q), n in table.dims().items())


def holomorphic_euler_characteristic(table: CohomologyTable) -> int:
    """Alternating sum over q of h^{0,q}."""
    return sum((-1) ** q * n for (p, q), n in table.dims().items() if p == 0)
