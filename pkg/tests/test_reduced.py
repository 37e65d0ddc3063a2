import random
from math import comb

import pytest

from subzeta.reduced import (Partition, check_reduced_fe, cone_contains, hilbert_series_exact,
                             hilbert_series_truncated, interior_contains, minimal_interior_vectors,
                             near_rectangle, partitions)
from subzeta.ratfun import t as T


def test_membership_examples():
    assert cone_contains((2,), (1, 1, 1)) and not interior_contains((2,), (1, 1, 1))
    assert interior_contains((2,), (2, 2, 1))
    assert interior_contains((4,), (4, 4, 3, 2, 1))
    assert not cone_contains((2,), (0, 1, 1))
    with pytest.raises(ValueError):
        cone_contains((2,), (1, 1))


def test_exact_examples():
    assert hilbert_series_exact((1,)).exact == 1 / (1 - T) ** 2
    assert hilbert_series_exact((1, 1)).exact == 1 / (1 - T) ** 3
    s = hilbert_series_exact((2,))
    assert s.exact == 1 / ((1 - T) ** 2 * (1 - T ** 3))
    assert s.format() == "1/((1-T)^2*(1-T^3))"
    assert s.verify(10)


def test_truncated_examples():
    assert hilbert_series_truncated((2,), 3) == [1, 2, 3, 5]
    assert hilbert_series_truncated((1,), 2) == [1, 2, 3]
    assert hilbert_series_truncated((2, 2), 2) == [1, 3, 6]


@pytest.mark.parametrize("size", range(1, 7))
def test_exact_matches_lattice_points(size):
    for lam in partitions(size):
        assert hilbert_series_exact(lam).verify(9), lam


def test_minimal_interior_examples():
    assert minimal_interior_vectors((4,)) == [(4, 4, 3, 2, 1)]
    assert len(minimal_interior_vectors((3, 2))) > 1
    assert minimal_interior_vectors((1,)) == [(1, 1)]
    assert minimal_interior_vectors((2,)) == [(2, 2, 1)]


@pytest.mark.parametrize("lam", [(2,), (3,), (2, 1), (2, 2), (3, 2), (3, 1, 1)])
def test_minimal_interior_bound_is_enough(lam):
    # enlarging the search box does not change the answer
    assert minimal_interior_vectors(lam) == minimal_interior_vectors(lam, lam[0] + 2)


@pytest.mark.parametrize("lam", [(2,), (3, 2), (2, 2, 1)])
def test_interior_points_dominate_a_minimal_vector(lam):
    lam = Partition(lam)
    mins = minimal_interior_vectors(lam)
    rnd = random.Random(sum(lam.parts))
    found = 0
    while found < 200:
        v = [rnd.randint(1, 8) for _ in range(lam.dim)]
        if not interior_contains(lam, v):
            continue
        found += 1
        assert any(cone_contains(lam, [a - b for a, b in zip(v, beta)]) for beta in mins)


def test_near_rectangle_examples():
    assert near_rectangle((3, 3, 1, 1)) == (True, (3, 2, 2))
    assert near_rectangle((3, 2)) == (False, None)
    assert near_rectangle((1, 1, 1)) == (True, (1, 3, 0))


def _predicted(c, r1, r2):
    return (-1) ** (1 + c * r1 + r2), c + comb(c + 1, 2) * r1 + r2


def test_all_ones_readings_agree():
    # (1^r) is both (c, r1, r2) = (1, r, 0) and (1, 0, r)
    for r in range(1, 6):
        rep = check_reduced_fe((1,) * r)
        assert rep.ok
        assert rep.fe == _predicted(1, r, 0) == _predicted(1, 0, r)


def test_reduced_fe_examples():
    r = check_reduced_fe((2,))
    assert r.ok and r.fe == (-1, 5)
    r = check_reduced_fe((3, 2))
    assert r.ok and r.fe is None and not r.near_rectangle
    r = check_reduced_fe((2, 2))
    assert r.ok and r.fe == (-1, 8)


@pytest.mark.parametrize("size", range(1, 8))
def test_reduced_fe_iff_near_rectangle(size):
    for lam in partitions(size):
        assert check_reduced_fe(lam).ok, lam


def test_partition_parsing():
    assert Partition.parse("3,3,1").parts == (3, 3, 1)
    for bad in ("2,3", "0", "a", "", "2,-1"):
        with pytest.raises(ValueError):
            Partition.parse(bad)
    assert [p.parts for p in partitions(3)] == [(3,), (2, 1), (1, 1, 1)]
