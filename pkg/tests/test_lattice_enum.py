import pytest

from subzeta import catalog
from subzeta.algebras import EndoSetup
from subzeta.formulas import zeta_c1
from subzeta.intlinalg import IntMat, diag, identity, valuation
from subzeta.lattice_enum import (_m_tilde1_closed, _m_tilde1_search, _m_tilde1_v1,
                                  a_triangle_series, check_delta_stability, count_invariant,
                                  delta_matrix, elementary_divisor_type, enumerate_sublattices,
                                  is_invariant, m2, m_tilde1, verify_xi_identity, weight_w,
                                  zeta_series_bruteforce)


def _coeffs(W, p, K):
    return [int(c.evaluate(q=p).constant()) for c in W.series_in_t(K)]


def test_enumerate_examples():
    got = {tuple(map(tuple, M.rows)) for M in enumerate_sublattices(2, 2, 1)}
    assert got == {((2, 0), (0, 1)), ((1, 0), (0, 2)), ((1, 1), (0, 2))}
    assert sum(1 for _ in enumerate_sublattices(2, 2, 2)) == 7
    assert list(enumerate_sublattices(3, 5, 0)) == [identity(3)]


@pytest.mark.parametrize("n,p,K", [(2, 2, 5), (3, 2, 4), (3, 3, 3), (4, 2, 3)])
def test_enumeration_complete_and_distinct(n, p, K):
    want = _coeffs(zeta_c1(n), p, K)
    for k in range(K + 1):
        Ms = [tuple(map(tuple, M.rows)) for M in enumerate_sublattices(n, p, k)]
        assert len(Ms) == len(set(Ms)) == want[k]


def test_is_invariant_examples(heis):
    assert not is_invariant(diag([1, 1, 2]), heis, 2)
    assert is_invariant(diag([2, 1, 1]), heis, 2)
    for E in (heis, catalog.g66(), catalog.m_f((2,))):
        assert is_invariant(identity(E.rank) * 3, E, 3)


def test_homothety(heis):
    for p in (2, 3):
        for k in range(3):
            for M in enumerate_sublattices(3, p, k):
                assert is_invariant(M, heis, p) == is_invariant(M * p, heis, p)


def test_count_examples(heis):
    assert [count_invariant(heis, 2, k) for k in (1, 2, 3)] == [3, 7, 19]
    assert count_invariant(catalog.m_f((1,)), 3, 2) == 4
    assert count_invariant(EndoSetup(2, (), (2,)), 2, 2) == 7


def test_backends_prune_threads_agree():
    for E, p, K in [(catalog.heisenberg(), 3, 3), (catalog.l_lambda((3,)), 2, 3),
                    (catalog.m_f((1, 1)), 2, 2)]:
        ref = zeta_series_bruteforce(E, p, K, backend="python")
        assert zeta_series_bruteforce(E, p, K, backend="numba") == ref
        assert zeta_series_bruteforce(E, p, K, prune=True) == ref
        assert zeta_series_bruteforce(E, p, K, prune=True, backend="python") == ref
        assert zeta_series_bruteforce(E, p, K, threads=4) == ref


def test_prune_needs_upper_triangular():
    E = EndoSetup(2, (IntMat([[0, 0], [1, 0]]),), None)
    with pytest.raises(ValueError):
        count_invariant(E, 2, 1, prune=True)


def test_bad_inputs(heis):
    with pytest.raises(ValueError):
        count_invariant(heis, 4, 1)
    with pytest.raises(ValueError):
        count_invariant(heis, 2, -1)


def test_elementary_divisor_type():
    assert elementary_divisor_type(diag([4, 2, 1]), 2) == ((1, 2), (1, 1), 0)
    assert elementary_divisor_type(identity(3) * 2, 2) == ((), (), 1)
    assert elementary_divisor_type(diag([2, 2, 1]), 2) == ((2,), (1,), 0)


def test_delta_examples(heis):
    d = delta_matrix(heis, 2)
    assert d.delta == diag([2, 2, 1]) and d.N == (3, 2, 0) and d.sum_N == 2
    assert delta_matrix(catalog.l_lambda((4,)), 3).delta == diag([27, 27, 9, 3, 1])
    assert delta_matrix(EndoSetup(3, (), (3,)), 5).delta == identity(3)
    with pytest.raises(ValueError):
        delta_matrix(catalog.fil4(), 2)


def test_worked_example(heis):
    d = delta_matrix(heis, 2)
    M1 = IntMat([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    M2 = IntMat([[1, 0, 1], [0, 1, 1], [0, 0, 2]])
    assert m_tilde1(M1, heis, d, 2) == m_tilde1(M2, heis, d, 2) == 1
    assert (m2(M1, heis, 2), weight_w(M1, heis, 2, d)) == (1, 0)
    assert (m2(M2, heis, 2), weight_w(M2, heis, 2, d)) == (0, 1)


@pytest.mark.parametrize("name,p,K", [("heisenberg", 2, 4), ("heisenberg", 3, 3), ("M:3", 2, 3),
                                      ("mf:1,1", 2, 2), ("grenham:2", 2, 2), ("u:3", 2, 3)])
def test_m_tilde1_routes_and_bounds(name, p, K):
    E = catalog.by_name(name)
    d = delta_matrix(E, p)
    for k in range(K + 1):
        for M in enumerate_sublattices(E.rank, p, k):
            s = _m_tilde1_search(M, E, d, p)
            assert s == _m_tilde1_v1(M, E, p) == _m_tilde1_closed(M, E, p)
            I, r, _ = elementary_divisor_type(M, p)
            assert s <= sum(r)
            inv = is_invariant(M, E, p)
            assert (s == 0) == inv
            assert is_invariant(_times_delta(M, d, s), E, p)
            if s:
                assert not is_invariant(_times_delta(M, d, s - 1), E, p)
            if valuation(M, p) == 0:
                w = weight_w(M, E, p, d)
                assert w >= 0
                if inv:
                    assert w == 0


def _times_delta(M, d, m):
    for _ in range(m):
        M = M @ d.delta
    return M


def test_a_triangle_heisenberg(heis):
    # maximal HNF lattices of index 1, 2, 4 weighted by t^{3w}
    assert a_triangle_series(heis, 2, 2) == [1, 4, 11]
    with pytest.raises(ValueError):
        a_triangle_series(EndoSetup(2, (), (2,)), 2, 2)


@pytest.mark.parametrize("name,p,K", [("heisenberg", 2, 4), ("heisenberg", 3, 3), ("M:3", 2, 3),
                                      ("mf:1", 2, 5)])
def test_xi_identity(name, p, K):
    rep = verify_xi_identity(catalog.by_name(name), p, K)
    assert rep.ok, rep


@pytest.mark.parametrize("name,p,K", [("heisenberg", 2, 4), ("mf:1", 2, 5), ("M:3", 3, 2)])
def test_delta_stability(name, p, K):
    assert check_delta_stability(catalog.by_name(name), p, K)


def test_delta_stability_abelian():
    assert check_delta_stability(EndoSetup(2, (), (2,)), 2, 3)
