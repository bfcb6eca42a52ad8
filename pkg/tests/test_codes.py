"""Derived codes, their exhaustive distance scans, and the three bound
calculators with frozen rational values."""

from fractions import Fraction

import numpy as np
import pytest

from zdbkit import (
    CodeBook,
    DssSystem,
    NotCwcEligibleError,
    ResidueRing,
    RingAdditiveDomain,
    VerificationError,
    ZdbFunction,
    ccc_bound,
    ccc_from_zdb,
    ccc_report,
    construct_generic,
    cwc_bound,
    cwc_from_zdb,
    cwc_report,
    cyclic_subgroup,
    distance_range,
    dss_bound,
    dss_from_zdb,
    dss_perfect_check,
    dss_report,
    min_distance,
    verify_zdb,
)


def brute_distances(words):
    out = []
    m = len(words)
    for i in range(m):
        for j in range(i + 1, m):
            out.append(sum(1 for a, b in zip(words[i], words[j]) if a != b))
    return out


def test_distance_range_against_brute_force():
    words = np.array([[0, 0, 1], [0, 1, 1], [2, 1, 0], [0, 0, 1]])
    # the zero-distance duplicate pair must be reported, not skipped
    assert distance_range(words) == (0, 3)
    assert min_distance(words) == 0
    dists = brute_distances(words.tolist())
    assert (min(dists), max(dists)) == (0, 3)


def test_ccc_from_z7_product(z7_product):
    book = ccc_from_zdb(z7_product)
    assert book.kind == "CCC"
    assert (book.n, book.M, book.q) == (21, 21, 11)
    assert book.d == book.d_max == 20
    assert book.composition == tuple([1] + [2] * 10)
    dists = brute_distances(book.codewords.tolist())
    assert set(dists) == {20}
    # every codeword is the table read along a shifted argument
    assert list(book.codewords[0]) == list(z7_product.table)


def test_ccc_composition_per_row(z7_product):
    book = ccc_from_zdb(z7_product)
    for row in book.codewords:
        counts = np.bincount(row, minlength=11)
        assert list(counts) == [1] + [2] * 10


def test_cwc_from_z7_product(z7_product):
    res = verify_zdb(z7_product)
    ccc = ccc_from_zdb(z7_product, res)
    cwc = cwc_from_zdb(z7_product, res, base=ccc)
    assert cwc.kind == "CWC"
    assert cwc.weight == 20
    assert cwc.d == 20
    assert np.array_equal(cwc.codewords, ccc.codewords)
    again = cwc_from_zdb(z7_product, res)
    assert np.array_equal(again.codewords, cwc.codewords)


def test_equidistant_identity_generic():
    # d = n - lambda must hold pairwise, checked exhaustively
    ring = ResidueRing(11)
    fn = construct_generic(ring, cyclic_subgroup(ring, 1))
    book = ccc_from_zdb(fn)
    assert book.d == book.d_max == 11


def test_dss_from_z7_product(z7_product):
    system = dss_from_zdb(z7_product)
    assert system.q == 11
    assert system.tau == 21
    assert system.perfect and system.partitioned
    assert system.lam == 20
    assert system.blocks[0] == (0,)
    assert sorted(x for b in system.blocks for x in b) == list(range(21))
    chk = dss_perfect_check(system)
    assert chk == (20, True, 20)


def test_dss_two_singletons_on_z2():
    """Both ordered cross pairs hit the difference 1, so lambda is 2."""
    system = DssSystem(
        domain=RingAdditiveDomain(ResidueRing(2)),
        blocks=((0,), (1,)),
        q=2,
        tau=2,
        lam=None,
        perfect=False,
        partitioned=True,
    )
    chk = dss_perfect_check(system)
    assert chk == (2, True, 2)


def test_dss_imperfect_control_on_z4():
    # symbol preimages of the broken table [0, 1, 2, 0]
    system = DssSystem(
        domain=RingAdditiveDomain(ResidueRing(4)),
        blocks=((0, 3), (1,), (2,)),
        q=3,
        tau=4,
        lam=None,
        perfect=False,
        partitioned=True,
    )
    chk = dss_perfect_check(system)
    assert chk.lam_min == 3
    assert not chk.perfect
    assert chk.lam is None


def test_builders_refuse_unverified_tables():
    fn = ZdbFunction(RingAdditiveDomain(ResidueRing(4)), 3, [0, 1, 2, 0], 1)
    with pytest.raises(VerificationError):
        ccc_from_zdb(fn)
    with pytest.raises(VerificationError):
        dss_from_zdb(fn)


def test_cwc_needs_unique_zero_preimage():
    fn = ZdbFunction(RingAdditiveDomain(ResidueRing(3)), 1, [0, 0, 0], 3)
    with pytest.raises(NotCwcEligibleError):
        cwc_from_zdb(fn)


def test_ccc_bound_frozen_values():
    rep = ccc_bound(21, 20, [1] + [2] * 10, achieved=21)
    assert (rep.bound_num, rep.bound_den) == (21, 1)
    assert rep.bound == Fraction(420, 20)
    assert rep.applicable and rep.optimal

    # non-integer bound: optimality compares against the floor
    rep = ccc_bound(5, 4, [3, 2], achieved=2)
    assert rep.bound == Fraction(5, 2)
    assert rep.optimal
    rep = ccc_bound(5, 4, [3, 2], achieved=1)
    assert not rep.optimal


def test_ccc_bound_inapplicable_when_denominator_vanishes():
    # nd - n^2 + sum(w^2) <= 0 carries no information
    rep = ccc_bound(4, 2, [2, 2], achieved=4)
    assert not rep.applicable
    assert not rep.optimal


def test_cwc_bound_frozen_values():
    rep = cwc_bound(100, 98, 99, 34, achieved=100)
    assert rep.bound == Fraction(9800, 98)
    assert (rep.bound_num, rep.bound_den) == (100, 1)
    assert rep.applicable and rep.optimal
    assert "q" in rep.note


def test_dss_bound_frozen_values():
    rep = dss_bound(21, 20, 11, achieved_tau=21)
    # 20*20 + ceil(400/10) = 440, next square 441
    assert (rep.bound_num, rep.bound_den) == (21, 1)
    assert rep.applicable and rep.optimal

    rep = dss_bound(100, 98, 34, achieved_tau=100)
    # 9702 + 294 = 9996, next square 10000
    assert (rep.bound_num, rep.bound_den) == (100, 1)
    assert rep.optimal

    rep = dss_bound(21, 20, 11, achieved_tau=22)
    assert not rep.optimal  # dss optimality is equality, not floor


def test_reports_match_direct_bounds(z7_product):
    res = verify_zdb(z7_product)
    ccc = ccc_from_zdb(z7_product, res)
    cwc = cwc_from_zdb(z7_product, res, base=ccc)
    dss = dss_from_zdb(z7_product, res)
    assert ccc_report(ccc).to_json() == ccc_bound(21, 20, ccc.composition, 21).to_json()
    assert cwc_report(cwc).to_json() == cwc_bound(21, 20, 20, 11, 21).to_json()
    assert dss_report(dss).to_json() == dss_bound(21, 20, 11, 21).to_json()
    for rep in (ccc_report(ccc), cwc_report(cwc), dss_report(dss)):
        assert rep.applicable and rep.optimal


def test_codebook_json_and_csv_round_trip(z7_product):
    book = ccc_from_zdb(z7_product)
    data = book.to_json()
    again = CodeBook.from_json(data)
    assert again.to_json() == data
    assert np.array_equal(again.codewords, book.codewords)
    csv = book.to_csv()
    rows = [line.split(",") for line in csv.strip().split("\n")]
    assert len(rows) == 21 and all(len(r) == 21 for r in rows)
    assert [int(x) for x in rows[0]] == list(z7_product.table)


def test_dss_json_round_trip(z7_product):
    system = dss_from_zdb(z7_product)
    data = system.to_json()
    assert data["kind"] == "DSS"
    again = DssSystem.from_json(data)
    assert again.to_json() == data
    assert again.blocks == system.blocks


def test_dss_check_rejects_overlapping_blocks():
    system = DssSystem(
        domain=RingAdditiveDomain(ResidueRing(4)),
        blocks=((0, 1), (1, 2)),
        q=2,
        tau=4,
        lam=None,
        perfect=False,
        partitioned=False,
    )
    with pytest.raises(RuntimeError):
        dss_perfect_check(system)
