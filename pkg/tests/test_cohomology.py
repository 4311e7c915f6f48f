from itertools import combinations
from math import comb

import pytest

from flagbott import cohomology
from flagbott.bott import FlagShape
from flagbott.cohomology import (
    check_flag_terms,
    dim_schur,
    euler_characteristic,
    flag_checks_apply,
    flag_cohomology,
    grassmann_cohomology,
    holomorphic_euler_characteristic,
    hodge_numbers,
    omega_decomposition,
    table_dimensions,
)
from flagbott.errors import ValidationError
from flagbott.lr import SchurDecomposition
from flagbott.oracle import gaussian_coefficients
from flagbott.partitions import GeneralizedPartition, Partition, squared_norm


def test_omega_decomposition():
    assert omega_decomposition(2, 2, 2) == [Partition.of(2), Partition.of(1, 1)]
    assert omega_decomposition(2, 2, 0) == [Partition()]
    assert omega_decomposition(2, 2, 5) == []


@pytest.mark.parametrize(
    "parts, d, expected",
    [
        ((1, 1, 1), 5, comb(5, 3)),
        ((3, 0), 2, 4),
        ((2, 1, 0), 3, 8),
        ((1, -1), 2, 3),
        ((), 4, 1),
    ],
)
def test_dim_schur(parts, d, expected):
    assert dim_schur(parts, d) == expected


def test_dim_schur_needs_full_length_for_negative_parts():
    with pytest.raises(ValidationError):
        dim_schur((1, -1), 3)


def test_hodge_numbers_of_g24():
    assert hodge_numbers(2, 4) == {(0, 0): 1, (1, 1): 1, (2, 2): 2, (3, 3): 1, (4, 4): 1}


def _hodge_sweep(max_d: int):
    for d in range(2, max_d + 1):
        for r in range(1, d):
            yield r, d


@pytest.mark.parametrize("r, d", list(_hodge_sweep(5)))
def test_trivial_bundle_hodge_diamond(r, d):
    table = grassmann_cohomology(r, d, Partition())
    dims = table.dims()
    assert all(p == q for p, q in dims)
    diagonal = [dims.get((p, p), 0) for p in range(table.dimension + 1)]
    assert diagonal == gaussian_coefficients(d, r)
    assert euler_characteristic(table) == comb(d, r)
    assert holomorphic_euler_characteristic(table) == 1


@pytest.mark.slow
def test_trivial_bundle_hodge_diamond_d6():
    for r in range(1, 6):
        dims = grassmann_cohomology(r, 6, Partition()).dims()
        assert [dims.get((p, p), 0) for p in range(r * (6 - r) + 1)] == gaussian_coefficients(6, r)
        assert all(p == q for p, q in dims)


@pytest.mark.parametrize("r, d", [(r, d) for d in range(1, 6) for r in range(1, d + 1)])
def test_det_q_has_only_global_sections(r, d):
    table = grassmann_cohomology(r, d, Partition((1,) * r))
    assert list(table.entries) == [(0, 0)]
    assert table.get(0, 0).terms == ((GeneralizedPartition(d, (1,) * r + (0,) * (d - r)), 1),)
    assert table_dimensions(table) == {(0, 0): comb(d, r)}


@pytest.mark.parametrize("n", range(1, 5))
def test_projective_space_matches_closed_formula(n, projective_hodge):
    for k in range(-6, 7):
        table = grassmann_cohomology(1, n + 1, GeneralizedPartition.of(k))
        dims = table.dims()
        for p in range(n + 1):
            for q in range(n + 1):
                assert dims.get((p, q), 0) == projective_hodge(n, k, p, q), (n, k, p, q)


@pytest.mark.parametrize("k", range(0, 5))
def test_line_bundles_on_the_projective_line(k):
    table = grassmann_cohomology(1, 2, GeneralizedPartition.of(k))
    assert table.dims().get((0, 0)) == k + 1


def test_terms_keep_weight_and_are_dominated():
    v = Partition.of(2, 1)
    table = grassmann_cohomology(2, 4, v)
    for p, q, psi, _ in table.terms():
        assert psi.weight == 3
        assert psi.parts[0] <= 2
        if psi.parts == (2, 1, 0, 0):
            assert (p, q) == (0, 0)


def test_grassmann_rejects_bad_rank():
    with pytest.raises(ValidationError) as e:
        grassmann_cohomology(3, 2, Partition())
    assert e.value.code == "E_RANGE"
    with pytest.raises(ValidationError):
        grassmann_cohomology(1, 3, Partition.of(1, 1))


def test_point_grassmannian():
    table = grassmann_cohomology(2, 2, Partition.of(3, 1))
    assert table.dimension == 0
    assert table.dims() == {(0, 0): 3}


def test_threaded_levels_match_sequential(monkeypatch):
    sequential = grassmann_cohomology(2, 5, Partition.of(2, 1))
    cohomology.clear_cache()
    monkeypatch.setattr(cohomology, "THREADS", 4)
    threaded = grassmann_cohomology(2, 5, Partition.of(2, 1))
    assert threaded is not sequential
    assert threaded.entries == sequential.entries


def test_memo_returns_the_same_table():
    first = grassmann_cohomology(2, 4, Partition.of(1))
    assert grassmann_cohomology(2, 4, Partition.of(1)) is first


def test_memo_is_bounded_and_clearable():
    grassmann_cohomology(2, 4, Partition.of(1))
    info = cohomology._grassmann_table.cache_info()
    assert info.maxsize == cohomology.MEMO_SIZE
    assert info.currsize == 1
    cohomology.clear_cache()
    assert cohomology._grassmann_table.cache_info().currsize == 0


def test_cached_entries_are_read_only():
    table = grassmann_cohomology(2, 4, Partition.of(1))
    with pytest.raises(TypeError):
        table.entries[(9, 9)] = SchurDecomposition(4)
    assert (9, 9) not in grassmann_cohomology(2, 4, Partition.of(1)).entries


def test_table_to_dict():
    data = grassmann_cohomology(1, 2, GeneralizedPartition.of(1)).to_dict()
    assert data == {
        "space": {"kind": "grassmannian", "r": 1, "d": 2, "dimension": 1},
        "bundle": [1],
        "exact": True,
        "entries": [{"p": 0, "q": 0, "terms": [{"partition": [1], "mult": 1}], "dim": 2}],
    }
    assert "terms" not in grassmann_cohomology(2, 4, Partition()).to_dict(True)["entries"][0]


# =============================================================================
# Partial flags
# =============================================================================


@pytest.mark.parametrize("r, d, k", [(1, 3, 2), (2, 4, 1), (2, 4, -1), (3, 5, 0)])
def test_single_step_flag_is_the_grassmannian(r, d, k):
    flag = FlagShape(d, (r,))
    full = grassmann_cohomology(r, d, GeneralizedPartition(r, (k,) * r))
    for P in range(flag.dimension + 1):
        table = flag_cohomology(flag, (k,), P)
        assert table.exact
        assert dict(table.entries) == {
            key: value for key, value in full.entries.items() if key[0] == P
        }


def test_complete_flag_of_the_plane_matches_the_projective_line():
    flag = FlagShape(2, (1, 2))
    line = grassmann_cohomology(1, 2, GeneralizedPartition.of(1))
    for P in range(flag.dimension + 1):
        table = flag_cohomology(flag, (1, 0), P)
        assert not table.exact
        assert dict(table.entries) == {
            key: value for key, value in line.entries.items() if key[0] == P
        }


def test_flag_at_p0_is_the_irreducible_module():
    flag = FlagShape(4, (1, 3))
    table = flag_cohomology(flag, (2, 1), 0)
    assert dict(table.entries) == {
        (0, 0): SchurDecomposition.from_counts(4, {(2, 1, 1, 0): 1})
    }


def test_flag_validation():
    flag = FlagShape(4, (1, 3))
    with pytest.raises(ValidationError) as e:
        flag_cohomology(flag, (1, 1), 0)
    assert e.value.code == "E_NOT_STRICT"
    with pytest.raises(ValidationError) as e:
        flag_cohomology(flag, (1,), 0)
    assert e.value.code == "E_LENGTH"
    with pytest.raises(ValidationError) as e:
        flag_cohomology(flag, (2, 1), -1)
    assert e.value.code == "E_RANGE"


def test_flag_above_dimension_is_empty():
    flag = FlagShape(3, (1, 2))
    assert flag_cohomology(flag, (2, 1), flag.dimension + 1).entries == {}


def test_flag_checks_apply():
    assert flag_checks_apply(FlagShape(4, (1, 3)), (2, 1))
    assert flag_checks_apply(FlagShape(3, (1, 3)), (1, 0))
    assert not flag_checks_apply(FlagShape(3, (1, 2)), (1, 0))


def _flag_sweep(max_d: int):
    for d in range(2, max_d + 1):
        for length in range(1, d + 1):
            for s in combinations(range(1, d + 1), length):
                for a in combinations(range(3, -1, -1), length):
                    yield FlagShape(d, s), a


def _assert_flag_inequalities(flag: FlagShape, a):
    target = Partition(flag.expand(a))
    for P in range(flag.dimension + 1):
        table = flag_cohomology(flag, a, P)
        check_flag_terms(table, a)
        if not flag_checks_apply(flag, a) or P == 0:
            continue
        for p, q, psi, _ in table.terms():
            rho = psi.as_partition()
            assert rho != target
            assert p + q + 1 + squared_norm(target) <= squared_norm(rho)


@pytest.mark.parametrize("flag, a", list(_flag_sweep(3)))
def test_flag_terms_gain_norm(flag, a):
    _assert_flag_inequalities(flag, a)


@pytest.mark.slow
def test_flag_terms_gain_norm_up_to_d5():
    for flag, a in _flag_sweep(5):
        _assert_flag_inequalities(flag, a)
