"""
Arithmetic vanishing certificates for Dolbeault cohomology of Schur bundles.

A query fixes a compact complex manifold of dimension n, a vector bundle E
of rank d, a bidegree (p, q) and a bundle built from E. Every applicable
theorem contributes one Verdict. Verdicts are one-directional: ``satisfied``
means the theorem guarantees H^{p,q} = 0 under its ampleness hypothesis,
never that the group is nonzero otherwise.

Bundle text forms (see ``parse_bundle``):
    schur:2,1            Lambda_R E with R = (2, 1)
    tensor:k=1,2;s=3     S^1 E (x) S^2 E (x) Lambda^3 E
    hook:1,3             the hook functor Gamma^alpha_k E, alpha=1, k=3
    symdet:2             S^2 E (x) det E
    wedge:2              Lambda^2 E
    schurdet:2,1;m=2     S_R E (x) (det E)^m
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from flagbott.bott import FlagShape
from flagbott.cohomology import flag_cohomology
from flagbott.errors import ParseError, ValidationError
from flagbott.lr import SchurDecomposition, lr_product
from flagbott.partitions import (
    GeneralizedPartition,
    Partition,
    distinct_decreasing,
    distinct_increasing,
    dominates,
    format_partition,
    parse_integers,
    parse_partition,
    squared_norm,
    transpose,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Bundles
# =============================================================================


@dataclass(frozen=True)
class SchurLambda:
    """Lambda_R E = S_{R~} E."""

    R: Partition

    def __post_init__(self):
        if self.R.is_zero():
            raise ValidationError("R must be a nonzero partition", code="E_ZERO_PARTITION")

    def shape(self, d: int) -> Partition:
        return transpose(self.R)

    def __str__(self) -> str:
        return f"schur:{format_partition(self.R)}"


@dataclass(frozen=True)
class TensorMix:
    """S^{k_1} E (x) ... (x) Lambda^{s_1} E (x) ..."""

    k: tuple[int, ...] = ()
    s: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.k and not self.s:
            raise ValidationError("tensor product needs at least one factor", code="E_LENGTH")
        if any(x < 1 for x in self.k + self.s):
            raise ValidationError(f"factors must be positive: k={self.k}, s={self.s}",
                                  code="E_RANGE")

    def shape(self, d: int) -> Partition:
        """lambda with transpose (s_1, ..., s_m, 1, ..., 1), one 1 per unit of sum(k)."""
        columns = sorted(self.s, reverse=True) + [1] * sum(self.k)
        return transpose(Partition(tuple(columns)))

    def __str__(self) -> str:
        return f"tensor:k={','.join(map(str, self.k))};s={','.join(map(str, self.s))}"


@dataclass(frozen=True)
class Hook:
    """Gamma^alpha_k E = S_{(alpha+1, 1^(k-alpha-1))} E."""

    alpha: int
    k: int

    def __post_init__(self):
        if not 0 <= self.alpha < self.k:
            raise ValidationError(f"need 0 <= alpha < k, got alpha={self.alpha}, k={self.k}",
                                  code="E_RANGE")

    def shape(self, d: int) -> Partition:
        return Partition((self.alpha + 1,) + (1,) * (self.k - self.alpha - 1))

    def __str__(self) -> str:
        return f"hook:{self.alpha},{self.k}"


@dataclass(frozen=True)
class SymDet:
    """S^r E (x) det E."""

    r: int

    def __post_init__(self):
        if self.r < 0:
            raise ValidationError(f"r must be nonnegative, got {self.r}", code="E_RANGE")

    def shape(self, d: int) -> Partition:
        return Partition((self.r + 1,) + (1,) * (d - 1))

    def __str__(self) -> str:
        return f"symdet:{self.r}"


@dataclass(frozen=True)
class WedgePower:
    """Lambda^r E."""

    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValidationError(f"r must be positive, got {self.r}", code="E_RANGE")

    def shape(self, d: int) -> Partition:
        return Partition((1,) * self.r)

    def __str__(self) -> str:
        return f"wedge:{self.r}"


@dataclass(frozen=True)
class SchurDet:
    """S_R E (x) (det E)^m."""

    R: Partition
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValidationError(f"m must be nonnegative, got {self.m}", code="E_RANGE")

    def shape(self, d: int) -> Partition:
        if self.R.length > d:
            return self.R
        return Partition(tuple(x + self.m for x in self.R.padded(d)))

    def __str__(self) -> str:
        return f"schurdet:{format_partition(self.R)};m={self.m}"


Bundle = SchurLambda | TensorMix | Hook | SymDet | WedgePower | SchurDet


def _wedge_rank(bundle: Bundle) -> int | None:
    """r when the bundle is Lambda^r E in any of its spellings."""
    match bundle:
        case WedgePower(r=r):
            return r
        case SchurLambda(R=R) if R.length == 1:
            return R.part(1)
        case TensorMix(k=(), s=(r,)):
            return r
        case Hook(alpha=0, k=k):
            return k
    return None


def _field(text: str, key: str, form: str) -> tuple[int, ...]:
    name, sep, value = text.partition("=")
    if not sep or name.strip() != key:
        raise ParseError(f"expected {key}=... in bundle {form!r}")
    return parse_integers(value)


def parse_bundle(form: str) -> Bundle:
    """Parse the ``kind:args`` text form of a bundle."""
    kind, sep, body = form.strip().partition(":")
    if not sep:
        raise ParseError(f"bundle must look like kind:args, got {form!r}")
    kind = kind.strip().lower()
    if kind == "schur":
        return SchurLambda(parse_partition(body))
    if kind == "tensor":
        fields = body.split(";")
        if len(fields) != 2:
            raise ParseError(f"tensor bundle needs k=...;s=..., got {form!r}")
        return TensorMix(_field(fields[0], "k", form), _field(fields[1], "s", form))
    if kind == "hook":
        values = parse_integers(body)
        if len(values) != 2:
            raise ParseError(f"hook bundle needs alpha,k, got {form!r}")
        return Hook(*values)
    if kind in ("symdet", "wedge"):
        values = parse_integers(body)
        if len(values) != 1:
            raise ParseError(f"{kind} bundle needs a single r, got {form!r}")
        return SymDet(values[0]) if kind == "symdet" else WedgePower(values[0])
    if kind == "schurdet":
        shape, _, twist = body.partition(";")
        R = parse_partition(shape)
        m = _field(twist, "m", form) if twist else (R.length,)
        if len(m) != 1:
            raise ParseError(f"schurdet needs a single m, got {form!r}")
        return SchurDet(R, m[0])
    raise ParseError(f"unknown bundle kind {kind!r} in {form!r}")


# =============================================================================
# Queries and verdicts
# =============================================================================


@dataclass(frozen=True)
class VanishingQuery:
    n: int
    d: int
    p: int
    q: int
    bundle: Bundle

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValidationError(f"n and d must be positive, got n={self.n}, d={self.d}",
                                  code="E_RANGE")
        if not (0 <= self.p <= self.n and 0 <= self.q <= self.n):
            raise ValidationError(
                f"need 0 <= p, q <= n, got p={self.p}, q={self.q}, n={self.n}", code="E_RANGE"
            )

    @property
    def excess(self) -> int:
        """p + q - n, the quantity every threshold is compared with."""
        return self.p + self.q - self.n

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "d": self.d, "p": self.p, "q": self.q, "bundle": str(self.bundle)}


@dataclass(frozen=True)
class Verdict:
    theorem: str
    hypothesis: str
    threshold: int | None
    satisfied: bool
    vacuous: bool = False
    detail: str = ""
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        data = {
            "theorem": self.theorem,
            "hypothesis": self.hypothesis,
            "threshold": self.threshold,
            "satisfied": self.satisfied,
            "vacuous": self.vacuous,
            "detail": self.detail,
        }
        if self.witness:
            data["witness"] = self.witness
        return data


@dataclass(frozen=True)
class Certificate:
    query: VanishingQuery
    verdicts: tuple[Verdict, ...]

    @property
    def certified(self) -> bool:
        return any(v.satisfied for v in self.verdicts)

    def to_dict(self) -> dict[str, Any]:
        return {
            "query": self.query.to_dict(),
            "certified": self.certified,
            "verdicts": [v.to_dict() for v in self.verdicts],
        }


def _zero_bundle(theorem: str, hypothesis: str, reason: str) -> Verdict:
    return Verdict(theorem, hypothesis, None, True, vacuous=True, detail=reason)


def _exceeds(theorem: str, hypothesis: str, query: VanishingQuery, threshold: int,
             **extra: Any) -> Verdict:
    satisfied = query.excess > threshold
    detail = f"p+q-n = {query.excess} {'>' if satisfied else '<='} {threshold}"
    return Verdict(theorem, hypothesis, threshold, satisfied, detail=detail, **extra)


def _degree_gate(theorem: str, hypothesis: str, value: int, name: str, bound: int) -> Verdict:
    satisfied = value > bound
    detail = f"{name} = {value} {'>' if satisfied else '<='} {bound}"
    return Verdict(theorem, hypothesis, bound, satisfied, detail=detail)


def schur_threshold(R: Partition, d: int) -> int:
    """sum of r_i (d - r_i) over the parts of R."""
    return sum(r * (d - r) for r in R.parts)


# =============================================================================
# The main theorems
# =============================================================================


def schur_power_vanishing(query: VanishingQuery) -> Verdict:
    """
    H^{p,q}(X, Lambda_R E) = 0 when Lambda_R E is ample and
    p + q - n > sum r_i (d - r_i).

    Any bundle that is a single Schur functor S_lam E is accepted, with
    R = transpose(lam).
    """
    bundle = query.bundle
    if isinstance(bundle, TensorMix):
        raise ValidationError("tensor products go through tensor_mix_vanishing", code="E_INPUT")
    R = bundle.R if isinstance(bundle, SchurLambda) else transpose(bundle.shape(query.d))
    hypothesis = f"Lambda_R E is ample, R = ({format_partition(R)})"
    if R.part(1) > query.d:
        return _zero_bundle("schur-lambda", hypothesis, f"a part of R exceeds d={query.d}")
    return _exceeds("schur-lambda", hypothesis, query, schur_threshold(R, query.d))


def tensor_mix_vanishing(query: VanishingQuery) -> Verdict:
    """
    Tensor products of symmetric and exterior powers.

    The product is ample iff S_lam E is, with transpose(lam) made of the s_j
    followed by sum(k) ones; the threshold is that of Lambda_{transpose(lam)} E:
    sum s_j (d - s_j) + (d - 1) sum k_i.
    """
    bundle = query.bundle
    if not isinstance(bundle, TensorMix):
        raise ValidationError(f"expected a tensor bundle, got {bundle}", code="E_INPUT")
    d = query.d
    lam = bundle.shape(d)
    hypothesis = "the tensor product (equivalently S_lambda E) is ample"
    witness = {"lambda": list(lam.parts), "lambda_transpose": list(transpose(lam).parts)}
    if any(x > d for x in bundle.s):
        return Verdict("tensor-mix", hypothesis, None, True, vacuous=True,
                       detail=f"some s_j exceeds d={d}: the bundle is zero", witness=witness)
    threshold = sum(x * (d - x) for x in bundle.s) + (d - 1) * sum(bundle.k)
    return _exceeds("tensor-mix", hypothesis, query, threshold, witness=witness)


# =============================================================================
# Classical theorems
# =============================================================================


def delta(x: int) -> int:
    """The positive integer with C(delta, 2) <= x < C(delta + 1, 2)."""
    if x < 0:
        raise ValidationError(f"delta needs x >= 0, got {x}", code="E_RANGE")
    return (1 + math.isqrt(8 * x + 1)) // 2


def hook_vanishing(query: VanishingQuery) -> Verdict:
    """Hook functors: p + q - n > (delta(n-p) + alpha)(d - k + 2 alpha) - alpha(alpha + 1)."""
    bundle = query.bundle
    if not isinstance(bundle, Hook):
        raise ValidationError(f"expected a hook bundle, got {bundle}", code="E_INPUT")
    alpha, k, d = bundle.alpha, bundle.k, query.d
    hypothesis = "E is ample"
    if d - k + alpha < 0:
        return _zero_bundle("hook-functor", hypothesis, "d - k + alpha < 0: the bundle is zero")
    threshold = (delta(query.n - query.p) + alpha) * (d - k + 2 * alpha) - alpha * (alpha + 1)
    return _exceeds("hook-functor", hypothesis, query, threshold)


def classical_vanishing(query: VanishingQuery) -> list[Verdict]:
    """
    Verdicts of the classical theorems whose bundle shape matches the query.

    Order is fixed: Kodaira-Akizuki-Nakano, Le Potier (top degree), Le Potier,
    Sommese, Griffiths, Demailly, hook functors.
    """
    bundle, d, n = query.bundle, query.d, query.n
    verdicts: list[Verdict] = []

    if d == 1 and bundle.shape(d).length <= 1:
        verdicts.append(_exceeds("kodaira-akizuki-nakano", "E is an ample line bundle", query, 0))

    rank = _wedge_rank(bundle)
    if rank is not None and rank <= d:
        if query.p == n:
            verdicts.append(_degree_gate("le-potier-top", "E is ample", query.q, "q", d - rank))
        verdicts.append(
            _exceeds("le-potier", f"Lambda^{rank} E is ample", query, rank * (d - rank))
        )

    if isinstance(bundle, TensorMix) and not bundle.k and all(x <= d for x in bundle.s):
        threshold = sum(x * (d - x) for x in bundle.s)
        verdicts.append(_exceeds("sommese", "E is ample", query, threshold))

    if isinstance(bundle, SymDet) and query.p == n:
        verdicts.append(_degree_gate("griffiths", "E is ample", query.q, "q", 0))

    if (
        isinstance(bundle, SchurDet)
        and bundle.m == bundle.R.length
        and bundle.R.length <= d
        and query.p == n
    ):
        verdicts.append(_degree_gate("demailly", "E is ample", query.q, "q", 0))

    if isinstance(bundle, Hook):
        verdicts.append(hook_vanishing(query))
    return verdicts


def certify(query: VanishingQuery) -> Certificate:
    """All verdicts for a query, main theorems first."""
    verdicts = []
    if isinstance(query.bundle, TensorMix):
        verdicts.append(tensor_mix_vanishing(query))
    else:
        verdicts.append(schur_power_vanishing(query))
    verdicts.extend(classical_vanishing(query))
    certificate = Certificate(query, tuple(verdicts))
    logger.debug(f"certify {query.bundle}: {len(verdicts)} verdicts")
    return certificate


def ampleness_implication(I: Partition, J: Partition) -> bool:  # noqa: E741
    """S_I E ample implies S_J E ample whenever I dominates J."""
    if I.is_zero() or J.is_zero():
        raise ValidationError(
            f"ampleness needs nonzero partitions, got {I} and {J}", code="E_ZERO_PARTITION"
        )
    return dominates(I, J)


# =============================================================================
# Flag reduction
# =============================================================================


def flag_reduction(R: Partition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Flag data (s, a) with a_s = transpose(R).

    a lists the distinct parts of transpose(R), largest first; s lists the
    distinct parts of R, smallest first.
    """
    if R.is_zero():
        raise ValidationError("R must be a nonzero partition", code="E_ZERO_PARTITION")
    return distinct_increasing(R), distinct_decreasing(transpose(R))


@dataclass(frozen=True)
class FlagWitness:
    """Scan of H^{P,q}(F_s(C^d), Q^a) over every P for the flag data of R."""

    R: Partition
    flag: FlagShape
    a: tuple[int, ...]
    terms: int
    min_slack: int | None
    max_degree: int | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "R": list(self.R.parts),
            "flag": self.flag.to_dict(),
            "a": list(self.a),
            "terms": self.terms,
            "min_slack": self.min_slack,
            "max_degree": self.max_degree,
        }


def flag_witness(R: Partition, d: int) -> FlagWitness:
    """
    Evaluate every P on F_s(C^d) with Q^a, (s, a) = flag_reduction(R).

    ``min_slack`` is the smallest ||rho||^2 - (P + q + 1 + ||a_s||^2) over
    the terms with P != 0 and ``max_degree`` the largest P + q among them.
    """
    s, a = flag_reduction(R)
    if s[-1] > d:
        raise ValidationError(f"R has a part {s[-1]} larger than d={d}", code="E_RANGE")
    flag = FlagShape(d, s)
    base = squared_norm(Partition(flag.expand(a)))
    slacks: list[int] = []
    degrees: list[int] = []
    for P in range(1, flag.dimension + 1):
        for p, q, psi, _ in flag_cohomology(flag, a, P).terms():
            slacks.append(squared_norm(psi.as_partition()) - (p + q + 1 + base))
            degrees.append(p + q)
    return FlagWitness(
        R, flag, a, len(slacks), min(slacks, default=None), max(degrees, default=None)
    )


# =============================================================================
# Tensor-mix audit
# =============================================================================


def tensor_mix_summands(k: Sequence[int], s: Sequence[int], d: int) -> SchurDecomposition:
    """Every S_mu E in S^{k_1} E (x) ... (x) Lambda^{s_1} E (x) ..., rank E = d."""
    factors = [Partition((x,)) for x in k] + [Partition((1,) * x) for x in s]
    current: Counter[tuple[int, ...]] = Counter({(0,) * d: 1})
    for factor in factors:
        following: Counter[tuple[int, ...]] = Counter()
        for parts, mult in current.items():
            for w, m in lr_product(GeneralizedPartition(d, parts), factor):
                following[w.parts] += mult * m
        current = following
    return SchurDecomposition.from_counts(d, current)


def column_threshold(mu: Partition, d: int) -> int:
    """Threshold of S_mu E = Lambda_{transpose(mu)} E."""
    return schur_threshold(transpose(mu), d)


@dataclass(frozen=True)
class TensorMixAudit:
    lam: Partition
    summands: SchurDecomposition
    undominated: tuple[Partition, ...]
    lam_threshold: int
    max_threshold: int

    @property
    def dominated(self) -> bool:
        return not self.undominated

    @property
    def optimal(self) -> bool:
        return self.lam_threshold >= self.max_threshold

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda": list(self.lam.parts),
            "summands": self.summands.to_dict()["terms"],
            "dominated": self.dominated,
            "undominated": [list(mu.parts) for mu in self.undominated],
            "lambda_threshold": self.lam_threshold,
            "max_threshold": self.max_threshold,
            "optimal": self.optimal,
        }


def audit_tensor_mix(k: Sequence[int], s: Sequence[int], d: int) -> TensorMixAudit:
    """
    Compare lambda with every direct summand of the tensor product.

    lambda should dominate each summand and carry the largest threshold.
    Both are reported, not assumed.
    """
    mix = TensorMix(tuple(k), tuple(s))
    lam = mix.shape(d)
    summands = tensor_mix_summands(mix.k, mix.s, d)
    shapes = [g.as_partition() for g, _ in summands]
    undominated = tuple(mu for mu in shapes if not dominates(lam, mu))
    thresholds = [column_threshold(mu, d) for mu in shapes]
    logger.debug(f"audit {mix}: {len(shapes)} summands")
    return TensorMixAudit(
        lam, summands, undominated, column_threshold(lam, d), max(thresholds, default=0)
    )
