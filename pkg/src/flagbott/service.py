"""
FlagbottService - text-in, payload-out facade over the engines.

Every public method takes the canonical text forms used on the command line
and by the MCP tools, runs the computation and returns a JSON-ready dict
tagged with ``"schema": "flagbott/1"``. The ``format_*`` functions turn the
same payloads into aligned text tables.

Usage:
    service = FlagbottService()
    service.lr(2, "1", "1")
    # {"schema": "flagbott/1", "terms": [{"partition": [2], "mult": 1}, ...], "r": 2}
"""

from __future__ import annotations

import json
import logging
import os
import random
from collections.abc import Callable, Sequence
from typing import Any

from flagbott.bott import (
    BottInput,
    FlagShape,
    beta_bijection,
    bott,
    bott_by_crossings,
    grassmann_bott,
    norm_gain_holds,
    splitting,
)
from flagbott.cohomology import (
    euler_characteristic,
    flag_cohomology,
    grassmann_cohomology,
    holomorphic_euler_characteristic,
)
from flagbott.errors import ValidationError
from flagbott.lr import is_height_increasing, iter_lr_terms, lr_product
from flagbott.oracle import gaussian_coefficients, oracle_product
from flagbott.partitions import (
    GeneralizedPartition,
    Partition,
    chi,
    format_partition,
    iter_partitions,
    parse_generalized,
    parse_integers,
    parse_partition,
    transpose,
)
from flagbott.vanishing import (
    SchurLambda,
    VanishingQuery,
    audit_tensor_mix,
    certify,
    flag_witness,
    parse_bundle,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Configuration
# =============================================================================

SCHEMA = "flagbott/1"

# Default seed for the randomized selftest checks
DEFAULT_SEED = int(os.getenv("FLAGBOTT_SEED", "0"))

# Random admissible pairs compared by the selftest crossing check
SELFTEST_SAMPLES = 300


def to_json(payload: dict[str, Any]) -> str:
    """Compact, key-order preserving JSON; identical payloads give identical bytes."""
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)


class FlagbottService:
    """Parses canonical text input and runs the flagbott engines."""

    # -------------------------------------------------------------------------
    # Littlewood-Richardson and Bott
    # -------------------------------------------------------------------------

    def lr(self, r: int, u: str, v: str) -> dict[str, Any]:
        """Decompose S_u (x) S_v into Schur functors of length r."""
        decomposition = lr_product(parse_generalized(u, r), parse_partition(v))
        logger.info(f"lr r={r} u={u} v={v}: {len(decomposition)} terms")
        return {"schema": SCHEMA, **decomposition.to_dict()}

    def bott(self, d: int, a: str) -> dict[str, Any]:
        weight = BottInput(d, parse_integers(a))
        result = bott(weight)
        if result is None:
            return {"schema": SCHEMA, "d": d, "admissible": False, "i": None, "psi": None}
        return {"schema": SCHEMA, "d": d, **result.to_dict()}

    def split(self, w: str, u: str, d: int) -> dict[str, Any]:
        """Crossing data, Sigma+/Sigma- split and beta for S_w Q (x) S_{u~} S on G_r(C^d)."""
        outer = parse_generalized(w)
        shape = parse_partition(u)
        payload: dict[str, Any] = {
            "schema": SCHEMA,
            "w": list(outer.parts),
            "u": list(shape.parts),
            "u_transpose": list(transpose(shape).parts),
            "chi_u": list(chi(shape.as_generalized(outer.r)).parts),
        }
        crossings = bott_by_crossings(outer, shape, d)
        if crossings is None:
            return {**payload, "admissible": False}
        payload.update({"admissible": True, **crossings.to_dict(), "split": None})
        try:
            split = splitting(outer, shape)
        except ValidationError as e:
            if e.code != "E_NOT_CONTAINED":
                raise
            logger.info(f"split w={w} u={u}: no skew diagram ({e})")
            return payload
        if split is not None:
            payload["split"] = split.to_dict()
            payload["split"]["height_increasing"] = is_height_increasing(beta_bijection(split))
        return payload

    # -------------------------------------------------------------------------
    # Cohomology tables
    # -------------------------------------------------------------------------

    def grass(self, r: int, d: int, v: str, dims_only: bool = False) -> dict[str, Any]:
        table = grassmann_cohomology(r, d, parse_generalized(v, r))
        logger.info(f"grass r={r} d={d} v={v}: {len(table.entries)} bidegrees")
        return {"schema": SCHEMA, **table.to_dict(dims_only)}

    def flag(self, d: int, s: str, a: str, P: int, dims_only: bool = False) -> dict[str, Any]:
        table = flag_cohomology(FlagShape(d, parse_integers(s)), parse_integers(a), P)
        logger.info(f"flag d={d} s={s} a={a} P={P}: {len(table.entries)} bidegrees")
        return {"schema": SCHEMA, "P": P, **table.to_dict(dims_only)}

    def hodge(self, r: int, d: int) -> dict[str, Any]:
        """Hodge numbers of G_r(C^d), checked against the Gaussian binomial."""
        table = grassmann_cohomology(r, d, Partition())
        dims = table.dims()
        betti = gaussian_coefficients(d, r)
        diagonal = [dims.get((p, p), 0) for p in range(table.dimension + 1)]
        return {
            "schema": SCHEMA,
            "r": r,
            "d": d,
            "hodge": [{"p": p, "q": q, "h": h} for (p, q), h in dims.items()],
            "diagonal": diagonal,
            "betti": betti,
            "matches_gaussian": diagonal == betti and all(p == q for p, q in dims),
            "euler": euler_characteristic(table),
            "arithmetic_genus": holomorphic_euler_characteristic(table),
        }

    # -------------------------------------------------------------------------
    # Vanishing
    # -------------------------------------------------------------------------

    def vanish(
        self, n: int, d: int, p: int, q: int, bundle: str, witness: bool = False
    ) -> dict[str, Any]:
        query = VanishingQuery(n, d, p, q, parse_bundle(bundle))
        certificate = certify(query)
        logger.info(f"vanish {bundle}: certified={certificate.certified}")
        payload = {"schema": SCHEMA, **certificate.to_dict()}
        if witness:
            if not isinstance(query.bundle, SchurLambda):
                raise ValidationError("--witness needs a schur:R bundle", code="E_INPUT")
            payload["witness"] = flag_witness(query.bundle.R, d).to_dict()
        return payload

    def audit(self, k: str, s: str, d: int) -> dict[str, Any]:
        report = audit_tensor_mix(parse_integers(k), parse_integers(s), d)
        return {"schema": SCHEMA, "d": d, **report.to_dict()}

    # -------------------------------------------------------------------------
    # Cross-checks
    # -------------------------------------------------------------------------

    def oracle_product(self, u: str, v: str, k: int) -> dict[str, Any]:
        """Compare the LR engine with the Schur-polynomial oracle on one product."""
        first, second = parse_partition(u), parse_partition(v)
        if first.length > k:
            raise ValidationError(f"u has more than k={k} rows", code="E_LENGTH")
        expected = oracle_product(first, second, k)
        computed = lr_product(first.as_generalized(k), second)
        return {
            "schema": SCHEMA,
            "k": k,
            "oracle": expected.to_dict()["terms"],
            "lr": computed.to_dict()["terms"],
            "agree": expected == computed,
        }

    def selftest(self, seed: int | None = None) -> dict[str, Any]:
        """Small-scale cross-module checks; every case must agree."""
        rng = random.Random(DEFAULT_SEED if seed is None else seed)
        checks: list[tuple[str, Callable[[], tuple[int, int]]]] = [
            ("lr-vs-oracle", _check_lr_oracle),
            ("crossings-vs-bott", lambda: _check_crossings(rng, SELFTEST_SAMPLES)),
            ("hodge-vs-gaussian", _check_hodge),
            ("norm-gain", _check_norm_gain),
        ]
        results = []
        for name, check in checks:
            cases, failures = check()
            logger.info(f"selftest {name}: {cases} cases, {failures} failures")
            results.append({"name": name, "cases": cases, "failures": failures})
        return {
            "schema": SCHEMA,
            "seed": DEFAULT_SEED if seed is None else seed,
            "checks": results,
            "passed": all(r["failures"] == 0 for r in results),
        }


# =============================================================================
# Selftest checks (cases, failures)
# =============================================================================


def _partitions_up_to(total: int, max_length: int) -> list[Partition]:
    return [u for n in range(total + 1) for u in iter_partitions(n, max_length=max_length)]


def _check_lr_oracle(total: int = 5, k: int = 3) -> tuple[int, int]:
    cases = failures = 0
    shapes = _partitions_up_to(total, k)
    for u in shapes:
        for v in shapes:
            if u.weight + v.weight > total:
                continue
            cases += 1
            if oracle_product(u, v, k) != lr_product(u.as_generalized(k), v):
                failures += 1
    return cases, failures


def _random_pair(rng: random.Random) -> tuple[GeneralizedPartition, Partition, int]:
    r = rng.randint(1, 4)
    d = r + rng.randint(0, 4)
    w = sorted((rng.randint(-8, 8) for _ in range(r)), reverse=True)
    u = sorted((rng.randint(0, d - r) for _ in range(r)), reverse=True)
    return GeneralizedPartition(r, tuple(w)), Partition(tuple(u)), d


def _check_crossings(rng: random.Random, samples: int) -> tuple[int, int]:
    cases = failures = 0
    while cases < samples:
        w, u, d = _random_pair(rng)
        direct = grassmann_bott(w, transpose(u).padded(d - w.r))
        crossings = bott_by_crossings(w, u, d)
        if direct is None and crossings is None:
            continue
        cases += 1
        if direct is None or crossings is None:
            failures += 1
        elif (direct.degree, direct.psi) != (crossings.degree, crossings.psi):
            failures += 1
    return cases, failures


def _check_hodge(max_d: int = 5) -> tuple[int, int]:
    cases = failures = 0
    for d in range(2, max_d + 1):
        for r in range(1, d):
            cases += 1
            table = grassmann_cohomology(r, d, Partition())
            dims = table.dims()
            diagonal = [dims.get((p, p), 0) for p in range(table.dimension + 1)]
            if diagonal != gaussian_coefficients(d, r) or any(p != q for p, q in dims):
                failures += 1
    return cases, failures


def _check_norm_gain(total: int = 5, max_r: int = 3) -> tuple[int, int]:
    cases = failures = 0
    for r in range(1, max_r + 1):
        for v in _partitions_up_to(total, r):
            if v.length != r:
                continue
            for u in _partitions_up_to(total - v.weight, r):
                d = r + u.part(1)
                for w, _ in iter_lr_terms(chi(u.as_generalized(r)), v):
                    holds = norm_gain_holds(u, v, w, d)
                    if holds is None:
                        continue
                    cases += 1
                    if not holds:
                        failures += 1
    return cases, failures


# =============================================================================
# Text rendering
# =============================================================================


def _table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(headers))]

    def line(row: Sequence[str]) -> str:
        return "| " + " | ".join(c.ljust(w) for c, w in zip(row, widths, strict=True)) + " |"

    separator = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
    return "\n".join([line(cells[0]), separator, *(line(row) for row in cells[1:])])


def _terms(terms: list[dict[str, Any]]) -> str:
    parts = []
    for term in terms:
        shape = format_partition(term["partition"])
        parts.append(shape if term["mult"] == 1 else f"{term['mult']}x({shape})")
    return " + ".join(parts) if parts else "0"


def format_lr(payload: dict[str, Any]) -> str:
    rows = [(format_partition(t["partition"]), t["mult"]) for t in payload["terms"]]
    return _table(["partition", "mult"], rows)


def format_bott(payload: dict[str, Any]) -> str:
    if not payload["admissible"]:
        return "not admissible: all cohomology vanishes"
    return f"H^{payload['i']} = S_({format_partition(payload['psi'])}) V"


def format_split(payload: dict[str, Any]) -> str:
    keys = ["w", "u", "u_transpose", "chi_u", "alpha", "beta", "gamma_rows", "gamma_columns",
            "s_plus", "s_minus", "i", "psi"]
    if not payload["admissible"]:
        return "not admissible: some alpha_i equals some beta_j"
    rows = [(key, payload[key]) for key in keys]
    split = payload.get("split")
    if split is None:
        rows.append(("split", "-"))
    else:
        rows += [(f"split.{key}", value) for key, value in split.items()]
    return _table(["field", "value"], rows)


def format_table(payload: dict[str, Any]) -> str:
    space = payload["space"]
    title = (
        f"G_{space['r']}(C^{space['d']})"
        if space["kind"] == "grassmannian"
        else f"F_({format_partition(space['s'])})(C^{space['d']})"
    )
    header = f"{title}, bundle ({format_partition(payload['bundle'])})"
    if not payload["exact"]:
        header += ", direct sum from the flag recursion"
    if not payload["entries"]:
        return f"{header}\nall entries vanish"
    with_terms = "terms" in payload["entries"][0]
    headers = ["p", "q", "dim"] + (["terms"] if with_terms else [])
    rows = [
        [e["p"], e["q"], e["dim"]] + ([_terms(e["terms"])] if with_terms else [])
        for e in payload["entries"]
    ]
    return f"{header}\n{_table(headers, rows)}"


def format_hodge(payload: dict[str, Any]) -> str:
    rows = [(h["p"], h["q"], h["h"]) for h in payload["hodge"]]
    summary = (
        f"betti {payload['betti']}, euler {payload['euler']}, "
        f"arithmetic genus {payload['arithmetic_genus']}, "
        f"gaussian {'ok' if payload['matches_gaussian'] else 'MISMATCH'}"
    )
    return f"{_table(['p', 'q', 'h'], rows)}\n{summary}"


def format_certificate(payload: dict[str, Any]) -> str:
    rows = [
        (v["theorem"], "-" if v["threshold"] is None else v["threshold"],
         "yes" if v["satisfied"] else "no", v["detail"], v["hypothesis"])
        for v in payload["verdicts"]
    ]
    lines = [_table(["theorem", "threshold", "vanishes", "detail", "hypothesis"], rows)]
    lines.append(f"certified: {'yes' if payload['certified'] else 'no'}")
    if "witness" in payload:
        w = payload["witness"]
        steps = w["flag"].get("s", [w["flag"].get("r")])
        lines.append(
            f"flag witness s={steps} a={w['a']}: "
            f"{w['terms']} terms, min slack {w['min_slack']}, max p+q {w['max_degree']}"
        )
    return "\n".join(lines)


def format_audit(payload: dict[str, Any]) -> str:
    rows = [(format_partition(t["partition"]), t["mult"]) for t in payload["summands"]]
    summary = (
        f"lambda ({format_partition(payload['lambda'])}): "
        f"dominates all summands: {'yes' if payload['dominated'] else 'no'}, "
        f"threshold {payload['lambda_threshold']} of max {payload['max_threshold']}"
    )
    return f"{summary}\n{_table(['summand', 'mult'], rows)}"


def format_oracle(payload: dict[str, Any]) -> str:
    rows = [(format_partition(t["partition"]), t["mult"]) for t in payload["oracle"]]
    verdict = "agree" if payload["agree"] else "DISAGREE"
    return f"{_table(['partition', 'mult'], rows)}\noracle and lr {verdict}"


def format_selftest(payload: dict[str, Any]) -> str:
    rows = [(c["name"], c["cases"], c["failures"]) for c in payload["checks"]]
    verdict = "passed" if payload["passed"] else "FAILED"
    return f"{_table(['check', 'cases', 'failures'], rows)}\nselftest {verdict}"
