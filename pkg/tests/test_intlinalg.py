import math
import random

from hypothesis import given, settings, strategies as st

from subzeta.intlinalg import (IntMat, adjugate, det, diag, hnf, identity, kernel_int,
                               rank, row_span_contains, saturate, snf, snf_with_transform,
                               valuation, zeros)


def test_snf_adjugate_det_examples():
    assert tuple(snf(diag([2, 1, 4]))) == (1, 2, 4)
    assert adjugate(IntMat([[1, 1], [0, 2]])) == IntMat([[2, -1], [0, 1]])
    for p in (2, 3):
        assert det(diag([p ** 2, p ** 3])) == p ** 5


def test_valuation_examples():
    assert valuation(IntMat([[2, 4], [8, 2]]), 2) == 1
    assert valuation(identity(3), 5) == 0
    assert valuation(zeros(2, 2), 3) == math.inf


def test_saturate_examples():
    assert hnf(saturate(IntMat([[2, 0]]))) == IntMat([[1, 0]])
    assert hnf(saturate(IntMat([[1, 1], [1, -1]]))) == identity(2)
    U = IntMat([[2, 1], [1, 1]])
    assert hnf(saturate(U)) == hnf(U)


def test_kernel_examples():
    assert kernel_int(IntMat([[0, 1], [0, 0]])) == IntMat([[0, 1]])
    assert hnf(kernel_int(zeros(2, 3))) == identity(2)
    assert kernel_int(IntMat([[2, 1], [1, 1]])).nrows == 0


def test_hnf_shape():
    H = hnf(IntMat([[4, 6, 2], [2, 3, 7], [0, 5, 5]]))
    for i in range(H.nrows):
        assert H[i, i] > 0
        for r in range(i):
            assert 0 <= H[r, i] < H[i, i]
        for r in range(i + 1, H.nrows):
            assert H[r, i] == 0


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))
rect = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-5, 5), min_size=s[1], max_size=s[1]),
                       min_size=s[0], max_size=s[0]))


@settings(max_examples=150, deadline=None)
@given(square)
def test_adjugate_identity(rows):
    M = IntMat(rows)
    n = M.nrows
    assert M @ adjugate(M) == identity(n) * det(M)


@settings(max_examples=150, deadline=None)
@given(rect)
def test_snf_transform_and_divisibility(rows):
    M = IntMat(rows)
    D, U, V = snf_with_transform(M)
    assert U @ M @ V == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = [D[i, i] for i in range(min(D.shape))]
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    if M.nrows == M.ncols and det(M):
        assert math.prod(d) == abs(det(M))


@settings(max_examples=150, deadline=None)
@given(square)
def test_hnf_preserves_span(rows):
    M = IntMat(rows)
    H = hnf(M)
    assert H.nrows == rank(M)
    if det(M):
        assert det(H) == abs(det(M))
    rnd = random.Random(str(rows))
    for _ in range(5):
        coeffs = [rnd.randint(-3, 3) for _ in range(M.nrows)]
        v = [sum(c * M[i, j] for i, c in enumerate(coeffs)) for j in range(M.ncols)]
        assert row_span_contains(H, v)
    for r in H.rows:
        assert row_span_contains(M, list(r))


@settings(max_examples=100, deadline=None)
@given(rect)
def test_saturate_idempotent_and_primitive(rows):
    M = IntMat(rows)
    S = saturate(M)
    if S.nrows == 0:
        return
    assert hnf(saturate(S)) == hnf(S)
    assert all(x == 1 for x in snf(S))
    assert rank(S) == rank(M)


@settings(max_examples=100, deadline=None)
@given(rect)
def test_kernel_is_saturated_kernel(rows):
    M = IntMat(rows)
    K = kernel_int(M)
    assert K.nrows == M.nrows - rank(M)
    if K.nrows:
        assert (K @ M).is_zero()
        assert all(x == 1 for x in snf(K))
