import pytest

from zdbkit import (
    ConditionNotSatisfiedError,
    DegenerateDoublingError,
    GaloisField,
    MatrixRing,
    NotAUnitError,
    ResidueRing,
    Subgroup,
    check_plus_one,
    check_unit_difference,
    coset_partition,
    cyclic_subgroup,
    doubled_subgroup,
    subgroup_from_elements,
)


def test_cyclic_subgroup_z7():
    ring = ResidueRing(7)
    g = cyclic_subgroup(ring, 2)
    assert g.elements == (1, 2, 4)
    assert g.order == 3
    assert 4 in g and 3 not in g
    assert cyclic_subgroup(ring, 6).elements == (1, 6)
    assert cyclic_subgroup(ring, 1).elements == (1,)


def test_cyclic_subgroup_rejects_nonunit():
    with pytest.raises(NotAUnitError):
        cyclic_subgroup(ResidueRing(6), 2)


def test_subgroup_from_elements_validates():
    ring = ResidueRing(7)
    assert subgroup_from_elements(ring, [4, 1, 2]).elements == (1, 2, 4)
    with pytest.raises(ValueError):
        subgroup_from_elements(ring, [1, 2])  # 2*2 = 4 missing
    with pytest.raises(ValueError):
        subgroup_from_elements(ring, [2, 4])  # identity missing
    with pytest.raises(ValueError):
        subgroup_from_elements(ring, [])


def test_position_tables_are_exact():
    ring = ResidueRing(13)
    g = cyclic_subgroup(ring, 3)  # {1, 3, 9}
    for i, a in enumerate(g.elements):
        for j, b in enumerate(g.elements):
            assert g.elements[g.mul_pos[i][j]] == ring.mul(a, b)
        inv = g.elements[g.inv_pos[i]]
        assert ring.mul(a, inv) == 1


def test_unit_difference_condition():
    z7 = ResidueRing(7)
    assert check_unit_difference(z7, cyclic_subgroup(z7, 2))
    z15 = ResidueRing(15)
    # 4 - 1 = 3 shares a factor with 15
    assert not check_unit_difference(z15, cyclic_subgroup(z15, 4))
    z9 = ResidueRing(9)
    assert check_unit_difference(z9, cyclic_subgroup(z9, 8))


def test_plus_one_condition():
    z7 = ResidueRing(7)
    assert check_plus_one(z7, cyclic_subgroup(z7, 2))  # g + 1 lands on units
    z9 = ResidueRing(9)
    assert not check_plus_one(z9, cyclic_subgroup(z9, 8))  # 8 + 1 = 0


def test_doubled_subgroup_z31():
    ring = ResidueRing(31)
    g = cyclic_subgroup(ring, 2)
    assert g.elements == (1, 2, 4, 8, 16)
    h = doubled_subgroup(ring, g)
    assert h.elements == (1, 2, 4, 8, 15, 16, 23, 27, 29, 30)
    assert h.order == 10
    # closure of the doubled set is a real subgroup property, not a given
    Subgroup(ring, h.elements)


def test_doubled_subgroup_degenerate():
    ring = ResidueRing(5)
    g = cyclic_subgroup(ring, 4)  # contains -1 already
    with pytest.raises(DegenerateDoublingError):
        doubled_subgroup(ring, g)


def test_partition_z7():
    ring = ResidueRing(7)
    part = coset_partition(ring, cyclic_subgroup(ring, 2))
    assert part.reps == (0, 1, 3)
    assert part.cosets == ((0,), (1, 2, 4), (3, 5, 6))
    assert part.nonzero_reps == (1, 3)


def test_partition_indicators_decompose_every_element():
    """RI(r) * CI(r) = r with CI in the subgroup, for several rings."""
    cases = [
        (ResidueRing(7), 2),
        (ResidueRing(9), 8),
        (ResidueRing(31), 2),
        (GaloisField(5, 2), 2),
    ]
    for ring, gen in cases:
        group = cyclic_subgroup(ring, gen)
        part = coset_partition(ring, group)
        seen = set()
        for r in range(1, ring.order):
            a = part.row_indicator(r)
            g = part.column_indicator(r)
            assert g in group
            assert a in part.reps
            assert ring.mul(a, g) == r
            seen.add(r)
        assert len(seen) == ring.order - 1


def test_partition_rejects_overlapping_cosets():
    ring = ResidueRing(15)
    with pytest.raises(ConditionNotSatisfiedError):
        coset_partition(ring, cyclic_subgroup(ring, 4))


def test_partition_rejects_z9_order_three_subgroup():
    # 4 - 1 = 3 is a zero divisor mod 9
    ring = ResidueRing(9)
    assert not check_unit_difference(ring, subgroup_from_elements(ring, [1, 4, 7]))
    with pytest.raises(ConditionNotSatisfiedError):
        coset_partition(ring, subgroup_from_elements(ring, [1, 4, 7]))


def test_partition_indicators_reject_zero():
    ring = ResidueRing(7)
    part = coset_partition(ring, cyclic_subgroup(ring, 2))
    with pytest.raises(ValueError):
        part.row_indicator(0)
    with pytest.raises(ValueError):
        part.column_indicator(0)


def test_partition_on_matrix_ring():
    ring = MatrixRing(2, GaloisField(5))
    group = cyclic_subgroup(ring, 378)  # 3I, order 4
    assert group.order == 4
    part = coset_partition(ring, group)
    assert len(part.cosets) == 1 + (625 - 1) // 4
    total = sum(len(c) for c in part.cosets)
    assert total == 625


def test_min_index_representatives():
    # every representative is the smallest index inside its coset
    ring = ResidueRing(31)
    part = coset_partition(ring, cyclic_subgroup(ring, 2))
    for rep, coset in zip(part.reps, part.cosets):
        assert rep == min(coset)


def test_subgroup_json_round_trip():
    ring = ResidueRing(7)
    g = cyclic_subgroup(ring, 2)
    data = g.to_json()
    assert data["elements"] == [1, 2, 4]
    assert data["generator"] == 2
    part = coset_partition(ring, g)
    pdata = part.to_json()
    assert pdata["reps"] == [0, 1, 3]
    assert pdata["cosets"] == [[0], [1, 2, 4], [3, 5, 6]]
