import math
from fractions import Fraction

import pytest

from conftest import random_set_system
from oblivround.errors import DimensionError, ObliviousRoundingError, UncoverableError
from oblivround.reference import brute_force_min_cover
from oblivround.setcover import (
    CertificateRecord,
    DualCertificate,
    SetSystem,
    cover_size_bound,
    greedy_set_cover,
    setcover_dual_bound,
)

TRIANGLE = SetSystem(3, ({1, 2}, {2, 3}, {1, 3}))
GREEDY_GAP = SetSystem(6, ({1, 2, 3}, {4, 5, 6}, {1, 4}, {2, 5}, {3, 6}))


def test_single_set():
    cover, cert = greedy_set_cover(SetSystem(4, ({1, 2, 3, 4},)))
    assert cover == [0]
    assert [(r.r, r.d) for r in cert] == [(4, 4)]
    assert setcover_dual_bound(cert, 1, 4) == math.inf


def test_triangle():
    cover, cert = greedy_set_cover(TRIANGLE)
    assert cover == [0, 1]
    assert brute_force_min_cover(TRIANGLE) == 2
    assert len(cover) <= math.ceil(2 * math.log(3))
    assert cert.records[0].value == Fraction(3, 2)
    bound = setcover_dual_bound(cert, 2, 3)
    assert bound == 1.5
    assert bound > 1 / math.log(3)


def test_greedy_gap_family():
    cover, _ = greedy_set_cover(GREEDY_GAP)
    assert cover[0] == 0
    assert brute_force_min_cover(GREEDY_GAP) == 2
    assert len(cover) <= math.ceil(2 * math.log(6)) == 4


def test_uncoverable():
    with pytest.raises(UncoverableError) as info:
        greedy_set_cover(SetSystem(4, ({1, 2},)))
    assert info.value.elements == [3, 4]


def test_bad_element():
    with pytest.raises(DimensionError):
        SetSystem(2, ({1, 3},))


def test_dual_bound_errors():
    with pytest.raises(ObliviousRoundingError):
        setcover_dual_bound(DualCertificate(()), 1, 3)
    # a forged certificate whose duals are too small must be refused
    forged = DualCertificate((CertificateRecord(1, 1),) * 10)
    with pytest.raises(ObliviousRoundingError):
        setcover_dual_bound(forged, 10, 3)


def test_cover_size_bound():
    assert cover_size_bound(1, 1) == 1
    assert cover_size_bound(2, 6) == 4


def test_random_systems(rng):
    for _ in range(300):
        system = random_set_system(rng)
        cover, cert = greedy_set_cover(system)
        k = len(cover)
        assert set().union(*(system.family[i] for i in cover)) == set(range(1, system.n + 1))
        assert k <= cover_size_bound(brute_force_min_cover(system), system.n)
        assert setcover_dual_bound(cert, k, system.n) > (k - 1) / math.log(system.n)

        uncovered = set(range(1, system.n + 1))
        inverse_sum = Fraction(0)
        for step, (i, rec) in enumerate(zip(cover, cert), start=1):
            assert rec.r == len(uncovered) and rec.d >= 1 and rec.value >= 1
            # feasible dual: every set receives total weight <= 1
            for s in system.family:
                assert Fraction(len(s & uncovered), rec.d) <= 1
            # never picks a set that adds nothing
            assert system.family[i] & uncovered
            uncovered -= system.family[i]
            inverse_sum += 1 / rec.value
            # uncovered < n / exp(sum 1/v), in log form
            if uncovered:
                assert math.log(len(uncovered)) < math.log(system.n) - float(inverse_sum)
