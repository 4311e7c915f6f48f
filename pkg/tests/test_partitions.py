import random

import pytest

from flagbott.errors import ParseError, ValidationError
from flagbott.partitions import (
    GeneralizedPartition,
    Partition,
    SkewShape,
    chi,
    distinct_decreasing,
    distinct_increasing,
    dominates,
    equivalent,
    format_partition,
    iter_partitions,
    parse_generalized,
    parse_integers,
    partitions_in_box,
    reconstruct,
    reorder_decreasing,
    skew_cells,
    squared_norm,
    transpose,
)


@pytest.mark.parametrize(
    "parts, expected",
    [
        ((4, 2, 1), (3, 2, 1, 1)),
        ((), ()),
        ((7, 7, 4, 3, 3, 1), (6, 5, 5, 3, 2, 2, 2)),
    ],
)
def test_transpose(parts, expected):
    assert transpose(Partition(parts)).parts == expected


@pytest.mark.parametrize("n", range(11))
def test_transpose_is_an_involution(n):
    for u in iter_partitions(n):
        assert transpose(transpose(u)) == u


@pytest.mark.parametrize("parts, expected", [((), 0), ((1, 1, 1), 9), ((4, 2, 1), 15)])
def test_squared_norm(parts, expected):
    assert squared_norm(Partition(parts)) == expected


def test_chi_reverses_and_negates():
    assert chi(GeneralizedPartition.of(2, 1, 0, -1, -2)).parts == (2, 1, 0, -1, -2)
    u = Partition.of(7, 7, 4, 3, 3, 1).as_generalized(6)
    assert chi(u).parts == (-1, -3, -3, -4, -7, -7)
    assert chi(GeneralizedPartition.of(0, 0)).parts == (0, 0)


def test_chi_is_an_involution_on_random_weights():
    rng = random.Random(11)
    for _ in range(2000):
        r = rng.randint(1, 8)
        parts = sorted((rng.randint(-20, 20) for _ in range(r)), reverse=True)
        u = GeneralizedPartition(r, tuple(parts))
        assert chi(chi(u)) == u
        assert chi(u).weight == -u.weight


def test_trailing_zeros_are_dropped():
    assert Partition((2, 1, 0)) == Partition.of(2, 1)
    assert Partition((0, 0)).is_zero()


def test_generalized_length_is_significant():
    assert GeneralizedPartition.of(0, 0) != GeneralizedPartition.of(0, 0, 0)


@pytest.mark.parametrize("parts", [(1, 2), (2, -1)])
def test_partition_rejects_bad_parts(parts):
    with pytest.raises(ValidationError):
        Partition(parts)


def test_generalized_rejects_increasing_parts():
    with pytest.raises(ValidationError) as e:
        GeneralizedPartition.of(-1, 0)
    assert e.value.code == "E_NOT_DECREASING"


def test_dominance_same_weight():
    assert dominates(Partition.of(2, 1), Partition.of(1, 1, 1))
    assert not dominates(Partition.of(1, 1, 1), Partition.of(2, 1))


def test_dominance_different_weights():
    assert dominates(Partition.of(2, 1), Partition.of(1, 1, 1, 1, 1))
    assert not dominates(Partition.of(1, 1, 1, 1, 1), Partition.of(2, 1))


@pytest.mark.parametrize("k", [1, 2, 5])
def test_row_partitions_are_equivalent(k):
    assert equivalent(Partition.of(k), Partition.of(1))


@pytest.mark.parametrize("n", range(1, 8))
def test_transpose_reverses_dominance_at_equal_weight(n):
    shapes = list(iter_partitions(n))
    for u in shapes:
        for v in shapes:
            assert dominates(u, v) == dominates(transpose(v), transpose(u))


def test_transpose_does_not_reverse_dominance_across_weights():
    # (3) ~ (1), yet (1,1,1) sits strictly below (1)
    assert equivalent(Partition.of(3), Partition.of(1))
    assert dominates(Partition.of(1), Partition.of(1, 1, 1))
    assert not dominates(Partition.of(1, 1, 1), Partition.of(1))


def test_dominance_with_zero_and_different_weight_is_rejected():
    with pytest.raises(ValidationError) as e:
        dominates(Partition(), Partition.of(1))
    assert e.value.code == "E_ZERO_PARTITION"


def _dominance_matrix(max_weight: int):
    shapes = [u for n in range(1, max_weight + 1) for u in iter_partitions(n)]
    return shapes, [[dominates(u, v) for v in shapes] for u in shapes]


def _assert_dominance_is_a_preorder(max_weight: int):
    shapes, above = _dominance_matrix(max_weight)
    for i, u in enumerate(shapes):
        assert above[i][i], u
        for j, v in enumerate(shapes):
            if above[i][j] and above[j][i] and u.weight == v.weight:
                assert u == v
            if not above[i][j]:
                continue
            for k, w in enumerate(shapes):
                if above[j][k]:
                    assert above[i][k], (u, v, w)


def test_dominance_is_a_preorder():
    _assert_dominance_is_a_preorder(6)


@pytest.mark.slow
def test_dominance_is_a_preorder_up_to_weight_ten():
    _assert_dominance_is_a_preorder(10)


@pytest.mark.parametrize(
    "values, expected, inversions",
    [
        ((-2, 3), (3, -2), 1),
        ((1, 2, 3), (3, 2, 1), 3),
        ((4, 2, 0, -2, -6, -8, -1, -3, -4, -7, -9, -10, -11), None, 8),
    ],
)
def test_reorder_decreasing(values, expected, inversions):
    reordering = reorder_decreasing(values)
    assert reordering.inversions == inversions
    assert reordering.sorted == (expected or tuple(sorted(values, reverse=True)))
    assert tuple(values[k] for k in reordering.placement) == reordering.sorted


def test_reorder_keeps_equal_entries_in_place():
    assert reorder_decreasing((1, 1, 1)).placement == (0, 1, 2)


@pytest.mark.parametrize(
    "a, s, expected",
    [((2,), (3,), (2, 2, 2)), ((3, 1), (1, 3), (3, 1, 1))],
)
def test_reconstruct(a, s, expected):
    assert reconstruct(a, s).parts == expected


@pytest.mark.parametrize("a, s", [((1, 1), (1, 2)), ((2, 1), (2, 1)), ((1,), (1, 2))])
def test_reconstruct_rejects_bad_input(a, s):
    with pytest.raises(ValidationError):
        reconstruct(a, s)


@pytest.mark.parametrize("n", range(1, 11))
def test_reconstruct_from_distinct_parts(n):
    # the distinct parts of the transpose are where the blocks of u end
    for u in iter_partitions(n):
        rebuilt = reconstruct(distinct_decreasing(u), distinct_increasing(transpose(u)))
        assert rebuilt.parts == u.parts


def test_skew_cells():
    single = SkewShape(GeneralizedPartition.of(1), GeneralizedPartition.of(0))
    assert skew_cells(single) == {(1, 1)}

    outer = GeneralizedPartition.of(5, 4, 3, 2, -1, -2)
    inner = GeneralizedPartition.of(-1, -3, -3, -4, -7, -7)
    assert len(skew_cells(SkewShape(outer, inner))) == 36

    assert skew_cells(SkewShape(outer, outer)) == frozenset()


def test_skew_shape_requires_containment():
    with pytest.raises(ValidationError) as e:
        SkewShape(GeneralizedPartition.of(1, 0), GeneralizedPartition.of(1, 1))
    assert e.value.code == "E_NOT_CONTAINED"


def test_iter_partitions_order():
    assert [p.parts for p in iter_partitions(3)] == [(3,), (2, 1), (1, 1, 1)]
    assert [p.parts for p in iter_partitions(4, max_length=2, max_part=2)] == [(2, 2)]


def test_partitions_in_box_counts():
    assert len(list(partitions_in_box(2, 2))) == 6
    assert len(list(partitions_in_box(2, 3))) == 10


def test_parse_integers():
    assert parse_integers("5, 4,-1") == (5, 4, -1)
    assert parse_integers("(2,1)") == (2, 1)
    assert parse_integers("") == ()
    with pytest.raises(ParseError) as e:
        parse_integers("1,a")
    assert e.value.code == "E_PARSE"


def test_parse_generalized():
    assert parse_generalized("1;r=3") == GeneralizedPartition.of(1, 0, 0)
    assert parse_generalized("0", 2) == GeneralizedPartition.of(0, 0)
    assert parse_generalized("5,4,-1").r == 3
    with pytest.raises(ValidationError):
        parse_generalized("1;r=3", 2)
    with pytest.raises(ParseError):
        parse_generalized("1;n=3")


def test_format_partition():
    assert format_partition(Partition.of(4, 2, 1)) == "4,2,1"
    assert format_partition(Partition()) == "0"
    assert format_partition(GeneralizedPartition.of(1, -1)) == "1,-1;r=2"
