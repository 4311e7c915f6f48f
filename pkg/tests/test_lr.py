from itertools import permutations, product

import pytest

from flagbott.cohomology import dim_schur
from flagbott.errors import ValidationError
from flagbott.lr import (
    LRFilling,
    SchurDecomposition,
    canonical_companion,
    check_classical,
    check_eight,
    enumerate_fillings,
    height_increasing_bijection,
    is_height_increasing,
    lr_order_less,
    lr_product,
    lr_sorted,
    satisfies_young_condition,
)
from flagbott.partitions import (
    GeneralizedPartition,
    Partition,
    SkewShape,
    chi,
    iter_partitions,
    skew_cells,
    transpose,
)


def row_shape(n: int) -> SkewShape:
    return SkewShape.of_partitions(Partition((n,)))


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 3), (2, 1), True), ((1, 3), (1, 2), True), ((2, 2), (1, 5), False)],
)
def test_lr_order(x, y, expected):
    assert lr_order_less(x, y) is expected


def test_check_classical_examples():
    single = LRFilling.from_labels(row_shape(1), Partition.of(1), {(1, 1): 1})
    assert check_classical(single)

    # reading right to left meets the 2 before any 1
    bad = LRFilling.from_labels(row_shape(2), Partition.of(1, 1), {(1, 1): 1, (1, 2): 2})
    assert not check_classical(bad)
    assert not check_eight(bad)

    pieri = LRFilling.from_labels(row_shape(2), Partition.of(2), {(1, 1): 1, (1, 2): 1})
    assert check_classical(pieri)
    assert check_eight(pieri)


def test_empty_filling_passes_every_check():
    empty = LRFilling.from_labels(SkewShape.of_partitions(Partition()), Partition(), {})
    assert check_classical(empty)
    assert satisfies_young_condition(empty)
    assert check_eight(empty)


def test_companion_counts_earlier_equal_labels():
    filling = LRFilling.from_labels(row_shape(2), Partition.of(2), {(1, 1): 1, (1, 2): 1})
    # (1, 2) comes first in LR order
    assert filling.numbering() == {(1, 2): (1, 1), (1, 1): (1, 2)}
    assert filling.word() == (1, 1)
    assert filling.has_content()
    assert filling.is_bijective()


@pytest.mark.parametrize(
    "outer, inner, content, count",
    [
        ((2, 1), (), (2, 1), 1),
        ((1,), (), (1,), 1),
        ((2, 2), (1,), (2, 1), 1),
        ((3, 2, 1), (2, 1), (2, 1), 2),
    ],
)
def test_enumerate_fillings_counts(outer, inner, content, count):
    shape = SkewShape.of_partitions(Partition(outer), Partition(inner))
    fillings = enumerate_fillings(shape, Partition(content))
    assert len(fillings) == count
    for f in fillings:
        assert f.has_content()
        assert check_classical(f)
        assert satisfies_young_condition(f)
        assert check_eight(f)


def test_enumerate_fillings_rejects_size_mismatch():
    with pytest.raises(ValidationError) as e:
        enumerate_fillings(row_shape(2), Partition.of(1))
    assert e.value.code == "E_SIZE"


def _small_skew_shapes(max_outer: int, max_cells: int):
    for n in range(1, max_outer + 1):
        for outer in iter_partitions(n):
            for m in range(n):
                for inner in iter_partitions(m, max_length=outer.length):
                    if n - m > max_cells:
                        continue
                    if all(inner.part(i) <= outer.part(i) for i in range(1, outer.length + 1)):
                        yield SkewShape.of_partitions(outer, inner)


def _check_all_numberings(max_outer: int, max_cells: int) -> int:
    checked = 0
    for shape in _small_skew_shapes(max_outer, max_cells):
        cells = sorted(skew_cells(shape))
        for content in iter_partitions(len(cells)):
            targets = sorted(content.cells())
            for image in permutations(targets):
                c1 = {x: y[0] for x, y in zip(cells, image, strict=True)}
                c2 = {x: y[1] for x, y in zip(cells, image, strict=True)}
                f = LRFilling(shape, content, c1, c2)
                classical = check_classical(f) and satisfies_young_condition(f)
                assert classical == check_eight(f), (shape, content, image)
                checked += 1
    return checked


def test_eight_conditions_match_classical_rules():
    """Every bijective numbering: classical rules with the Young condition iff the eight."""
    assert _check_all_numberings(max_outer=5, max_cells=4) > 0


@pytest.mark.slow
def test_eight_conditions_match_classical_rules_up_to_seven_cells():
    assert _check_all_numberings(max_outer=7, max_cells=7) > 0


def _companions(c1, content: Partition):
    """Every c2 that makes (c1, c2) a bijection onto Y(content)."""
    by_label = [[x for x in lr_sorted(c1) if c1[x] == k] for k in range(1, content.length + 1)]
    orders = [permutations(range(1, len(cells) + 1)) for cells in by_label]
    for choice in product(*orders):
        yield {x: b for cells, order in zip(by_label, choice) for x, b in zip(cells, order)}


def _check_companions(max_outer: int, max_cells: int) -> int:
    checked = 0
    for shape in _small_skew_shapes(max_outer, max_cells):
        for content in iter_partitions(shape.size):
            for f in enumerate_fillings(shape, content):
                valid = [
                    c2
                    for c2 in _companions(f.c1, content)
                    if check_eight(LRFilling(shape, content, f.c1, c2))
                ]
                assert valid == [canonical_companion(f.c1)], (shape, content, f.c1)
                checked += 1
    return checked


def test_lr_companion_is_unique():
    assert _check_companions(max_outer=5, max_cells=4) > 0


@pytest.mark.slow
def test_lr_companion_is_unique_up_to_seven_cells():
    assert _check_companions(max_outer=7, max_cells=7) > 0


def test_lr_product_pieri():
    product = lr_product(GeneralizedPartition.of(1, 0), Partition.of(1))
    assert product == SchurDecomposition.from_counts(2, {(2,): 1, (1, 1): 1})


def test_lr_product_identity_factor():
    product = lr_product(GeneralizedPartition.of(0, 0), Partition.of(2, 1))
    assert product.terms == ((GeneralizedPartition.of(2, 1), 1),)


def test_lr_product_two_hooks():
    product = lr_product(Partition.of(2, 1).as_generalized(4), Partition.of(2, 1))
    expected = {
        (4, 2): 1,
        (4, 1, 1): 1,
        (3, 3): 1,
        (3, 2, 1): 2,
        (3, 1, 1, 1): 1,
        (2, 2, 2): 1,
        (2, 2, 1, 1): 1,
    }
    assert {g.as_partition().parts: m for g, m in product} == expected
    assert product.total() == 8


def test_lr_product_drops_rows_beyond_r():
    product = lr_product(GeneralizedPartition.of(1, 0), Partition.of(1, 1))
    assert product.partition_counts() == {Partition.of(2, 1): 1}


def test_lr_product_with_negative_parts():
    # V* (x) V = trivial + adjoint
    product = lr_product(GeneralizedPartition.of(0, -1), Partition.of(1))
    assert product.as_counter() == {(1, -1): 1, (0, 0): 1}


def _factor_pairs(total: int):
    for m in range(total + 1):
        for u in iter_partitions(m):
            for v in iter_partitions(total - m):
                yield u, v


def _assert_product_commutes_with_transpose(total: int):
    # enough rows that no term is cut off
    k = max(1, total)
    for u, v in _factor_pairs(total):
        direct = lr_product(u.as_generalized(k), v).partition_counts()
        flipped = lr_product(transpose(u).as_generalized(k), transpose(v)).partition_counts()
        assert direct == {transpose(w): m for w, m in flipped.items()}, (u, v)


@pytest.mark.parametrize("total", range(6))
def test_lr_product_commutes_with_transpose(total):
    _assert_product_commutes_with_transpose(total)


@pytest.mark.slow
@pytest.mark.parametrize("total", [6, 7, 8])
def test_lr_product_commutes_with_transpose_up_to_weight_eight(total):
    _assert_product_commutes_with_transpose(total)


def _assert_dimensions_add_up(r: int, max_weight: int):
    for m in range(max_weight + 1):
        for base in iter_partitions(m, max_length=r):
            for u in {base.as_generalized(r), chi(base.as_generalized(r))}:
                for n in range(max_weight + 1 - m):
                    for v in iter_partitions(n, max_length=r):
                        decomposition = lr_product(u, v)
                        expected = dim_schur(u, r) * dim_schur(v.parts, r)
                        dims = sum(k * dim_schur(w, r) for w, k in decomposition)
                        assert dims == expected, (u, v)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_lr_product_dimensions_add_up(r):
    _assert_dimensions_add_up(r, 5)


@pytest.mark.slow
@pytest.mark.parametrize("r", [3, 4])
def test_lr_product_dimensions_add_up_to_weight_eight(r):
    _assert_dimensions_add_up(r, 8)


def test_decomposition_to_dict_is_sorted():
    product = lr_product(GeneralizedPartition.of(1, 0), Partition.of(1))
    assert product.to_dict() == {
        "terms": [{"partition": [2], "mult": 1}, {"partition": [1, 1], "mult": 1}],
        "r": 2,
    }


def test_height_increasing():
    v = Partition.of(2, 1)
    assert is_height_increasing({c: c for c in v.cells()})
    assert not is_height_increasing({(2, 1): (1, 5)})


def test_height_increasing_bijection_follows_dominance():
    assert height_increasing_bijection(Partition.of(2, 1), Partition.of(1, 1, 1)) is not None
    assert height_increasing_bijection(Partition.of(1, 1, 1), Partition.of(2, 1)) is None
    assert height_increasing_bijection(Partition.of(2), Partition.of(1)) is None


@pytest.mark.parametrize("n", range(1, 7))
def test_height_increasing_bijection_exists_for_dominated_pairs(n):
    shapes = list(iter_partitions(n))
    for v in shapes:
        for u in shapes:
            exists = height_increasing_bijection(v, u) is not None
            # Y(v) -> Y(u) height increasing exactly when u is dominated by v
            dominated = all(
                sum(u.parts[:k]) <= sum(v.parts[:k]) for k in range(1, n + 1)
            )
            assert exists == dominated, (v, u)


def _assert_bijections_increase_height(n: int):
    shapes = list(iter_partitions(n))
    for source in shapes:
        for target in shapes:
            b = height_increasing_bijection(source, target)
            # cells at depth k or more must land at depth k or more
            fits = all(
                sum(target.parts[k:]) >= sum(source.parts[k:]) for k in range(source.length)
            )
            assert (b is not None) == fits, (source, target)
            if b is None:
                continue
            assert set(b) == source.cells()
            assert len(set(b.values())) == len(b)
            assert set(b.values()) == target.cells()
            assert is_height_increasing(b)


@pytest.mark.parametrize("n", range(1, 8))
def test_height_increasing_bijection_is_a_bijection(n):
    _assert_bijections_increase_height(n)


@pytest.mark.slow
@pytest.mark.parametrize("n", [8, 9, 10])
def test_height_increasing_bijection_is_a_bijection_up_to_weight_ten(n):
    _assert_bijections_increase_height(n)
