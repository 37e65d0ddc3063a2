"""Finite-index sublattices of ``Z^n`` in Hermite normal form, invariance
tests, brute-force counts, and the homothety-class invariants
(elementary divisor type, ``delta``, ``m~1``, ``m2``, the weight ``w``)
that feed the auxiliary series ``A``.

Lattices are row spans; generators act from the right.  Only ``p``-power
index lattices are ever considered, so integral and ``p``-adic membership
agree.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .algebras import AlgebraError, block_coranks, centralizer_series, check_condition
from .intlinalg import (IntMat, adjugate, det, diag, identity, snf, snf_with_transform,
                        valuation, valuation_int)
from .ratfun import t as T_

__all__ = [
    "compositions", "enumerate_sublattices", "is_invariant", "count_invariant",
    "zeta_series_bruteforce", "elementary_divisor_type", "LatticeRep", "lattice_rep",
    "DeltaData", "delta_matrix", "m_tilde1", "m2", "weight_w", "a_triangle_series",
    "XiReport", "verify_xi_identity", "check_delta_stability", "default_threads",
]

THREADS_ENV = "SUBZETA_THREADS"


def default_threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def compositions(k, n):
    """Weak compositions of ``k`` into ``n`` parts, lexicographically."""
    if n == 1:
        yield (k,)
        return
    for a in range(k, -1, -1):
        for rest in compositions(k - a, n - 1):
            yield (a,) + rest


def _check_prime(p):
    if p < 2 or any(p % f == 0 for f in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not prime")


def enumerate_sublattices(n, p, k):
    """Yield every HNF of determinant ``p^k`` in ``Z^n`` exactly once."""
    _check_prime(p)
    for a in compositions(k, n):
        d = [p ** x for x in a]
        pos, _ = _kernels.odometer_positions(d)
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            M[i][i] = d[i]
        while True:
            yield IntMat(M, n)
            x = 0
            while x < len(pos):
                i, j = pos[x]
                M[i][j] += 1
                if M[i][j] < d[j]:
                    break
                M[i][j] = 0
                x += 1
            if x >= len(pos):
                break


def _vp_det(M, p):
    D = det(M)
    if D == 0:
        raise ValueError("lattice matrix is singular")
    return valuation_int(D, p)


def is_invariant(M, E, p):
    """``Lambda * C`` inside ``Lambda`` for each generator, via ``v(M C adj M) >= v(det M)``."""
    k = _vp_det(M, p)
    A = adjugate(M)
    for C in E.generators:
        X = M @ C @ A
        if any(valuation_int(x, p) < k for row in X.rows for x in row if x):
            return False
    return True


# -- counting ---------------------------------------------------------------

def _gens_array(E):
    n = E.rank
    arr = np.zeros((E.d, n, n), dtype=np.int64)
    for g, C in enumerate(E.generators):
        for r in range(n):
            for s in range(n):
                arr[g, r, s] = C[r, s]
    return arr


def _fits_int64(E, p, k):
    n = E.rank
    maxc = max([abs(C[r, s]) for C in E.generators for r in range(n) for s in range(n)] or [0])
    pk = p ** k
    return n * max(maxc, 1) * pk * (1 + pk) ** n < 2 ** 62


def count_invariant(E, p, k, threads=None, prune=False, backend="auto"):
    """Number of generator-invariant sublattices of index ``p^k``.

    ``backend`` is ``"numba"``, ``"python"`` or ``"auto"`` (numba when the
    entries provably fit in 64 bits).  Work is split by diagonal
    composition; the result does not depend on ``threads``.
    """
    _check_prime(p)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if prune and not E.strictly_upper():
        raise ValueError("pruning needs strictly upper triangular generators")
    n = E.rank
    if backend == "auto":
        backend = "numba" if _kernels.HAVE_NUMBA and _fits_int64(E, p, k) else "python"
    if backend == "numba":
        if not _fits_int64(E, p, k):
            raise OverflowError("entries may exceed 64 bits; use the python backend")
        gens = _gens_array(E)

        def work(a):
            d = np.array([p ** x for x in a], dtype=np.int64)
            return int(_kernels.count_composition_nb(d, gens, bool(prune)))
    elif backend == "python":
        gens = [C.tolist() for C in E.generators]

        def work(a):
            return _kernels.count_composition_py([p ** x for x in a], gens, prune)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    comps = list(compositions(k, n))
    threads = threads or default_threads()
    if threads <= 1:
        return sum(work(a) for a in comps)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(work, comps))


def zeta_series_bruteforce(E, p, K, **kw):
    """``[a_{p^0}, ..., a_{p^K}]`` by exhaustive counting."""
    return [count_invariant(E, p, k, **kw) for k in range(K + 1)]


# -- elementary divisor types ------------------------------------------------

def _snf_exponents(M, p):
    ex = []
    for x in snf(M):
        if x == 0:
            raise ValueError("lattice matrix is singular")
        e = valuation_int(x, p)
        if abs(x) != p ** e:
            raise ValueError(f"determinant is not a power of {p}")
        ex.append(e)
    return ex


def elementary_divisor_type(M, p):
    """``(I, r_I, r_n)`` with ``I`` a 1-based subset of ``[n-1]``."""
    s = sorted(_snf_exponents(M, p), reverse=True)
    n = len(s)
    I = tuple(i for i in range(1, n) if s[i - 1] > s[i])
    r = tuple(s[i - 1] - s[i] for i in I)
    return I, r, s[-1]


@dataclass(frozen=True)
class LatticeRep:
    M: IntMat
    p: int
    k: int
    I: tuple
    r_I: tuple
    r_n: int
    m_tilde1: int = None
    m2: int = None
    w: int = None

    @property
    def maximal(self):
        return self.r_n == 0


def lattice_rep(M, p, E=None, delta=None):
    """Bundle ``M`` with its type and, given a setup, ``m~1``, ``m2`` and ``w``."""
    I, r, rn = elementary_divisor_type(M, p)
    k = _vp_det(M, p)
    assert k == sum(i * x for i, x in zip(I, r)) + len(M.rows) * rn
    if E is None:
        return LatticeRep(M, p, k, I, r, rn)
    delta = delta or delta_matrix(E, p)
    mt = m_tilde1(M, E, delta, p)
    mm = m2(M, E, p)
    return LatticeRep(M, p, k, I, r, rn, mt, mm, (delta.c - 1) * mt - mm)


# -- delta -------------------------------------------------------------------

@dataclass(frozen=True)
class DeltaData:
    delta: IntMat
    delta_tilde: IntMat
    c: int
    N: tuple
    sum_N: int          # sum_{i=1}^{c-1} N_i
    sum_coN: int        # sum_{i=1}^{c-1} (n - N_i)
    grading: tuple = field(default=())


def delta_matrix(E, p):
    """``diag(p^{c-1} (n_1 times), ..., p (n_{c-1} times), 1 (n_c times))``.

    Requires the block-shift condition.  The block coranks are checked
    against the centralizer coranks, and ``delta C delta^{-1} = p C`` is
    verified per generator.
    """
    if not E.generators:
        n = E.rank
        return DeltaData(identity(n), identity(n), 1, (n, 0), 0, 0, (n,))
    cd = centralizer_series(E)
    bad = check_condition(E, cd)
    if bad is not None:
        raise AlgebraError(f"block-shift condition fails: {bad}")
    g, c, n = E.grading, cd.c, E.rank
    if block_coranks(g) != cd.N:
        raise AlgebraError(f"block coranks {block_coranks(g)} differ from {cd.N}")
    entries = []
    for b, size in enumerate(g):
        entries += [p ** (c - 1 - b)] * size
    delta = diag(entries)
    dt = diag([p ** (c - 1) // x for x in entries])
    sN = sum(cd.N[1:c])
    assert det(delta) == p ** sN
    D = det(delta)
    A = adjugate(delta)
    for C in E.generators:
        assert delta @ C @ A == C * (p * D)
    return DeltaData(delta, dt, c, cd.N, sN, sum(n - x for x in cd.N[1:c]), g)


def _maximal(M, p):
    v = valuation(M, p)
    if v == math.inf:
        raise ValueError("zero matrix")
    return M if v == 0 else IntMat([[x // p ** v for x in row] for row in M.rows], M.ncols)


def _normalized_alpha(M, p):
    """``(e, alpha)`` with ``M ~ D alpha^{-1}``, ``D = diag(p^{e_1} >= ... >= p^{e_n})``."""
    D0, U, V = snf_with_transform(M)
    n = M.nrows
    ex = [valuation_int(D0[i, i], p) for i in range(n)]
    # reverse to descending order: alpha = V P
    alpha = IntMat([list(reversed(row)) for row in V.rows], n)
    return list(reversed(ex)), alpha


def _x_blocks(alpha, E):
    """``X^{(i)} = adj(alpha) [C_1 alpha[i] | ... | C_d alpha[i]]`` for each column ``i``."""
    n = alpha.nrows
    adj = adjugate(alpha)
    out = []
    for i in range(n):
        col = IntMat([[alpha[r, i]] for r in range(n)], 1)
        R = [C @ col for C in E.generators]
        Rm = IntMat([[R[s][r, 0] for s in range(len(R))] for r in range(n)], len(R))
        out.append(adj @ Rm)
    return out


def _m_tilde1_closed(M, E, p):
    """``max(0, e_i - e_rho - v(X^{(i)}_{rho sigma}))`` over all indices."""
    e, alpha = _normalized_alpha(_maximal(M, p), p)
    X = _x_blocks(alpha, E)
    n = len(e)
    best = 0
    for i in range(n):
        for rho in range(n):
            for x in X[i].rows[rho]:
                if x:
                    best = max(best, e[i] - e[rho] - valuation_int(x, p))
    return best


def _m_tilde1_v1(M, E, p):
    """Same value via the cumulative minima ``v1[i][r]`` over ``iota <= i``, ``rho >= r``."""
    e, alpha = _normalized_alpha(_maximal(M, p), p)
    X = _x_blocks(alpha, E)
    n = len(e)
    total = e[0]                        # sum of all r_iota
    vals = [[min((valuation_int(x, p) for x in X[i].rows[rho] if x), default=math.inf)
             for rho in range(n)] for i in range(n)]
    v1 = [[math.inf] * (n + 1) for _ in range(n)]
    for i in range(n):
        for r in range(n - 1, -1, -1):
            here = min(vals[i][r], v1[i][r + 1])
            if i:
                here = min(here, v1[i - 1][r])
            v1[i][r] = here
    m1 = total
    for i in range(n):
        for r in range(n):
            # sum_{r <= iota} r_iota = e_r ; sum_{iota < i} r_iota = e_1 - e_i
            m1 = min(m1, e[r] + (e[0] - e[i]) + v1[i][r])
    return int(total - m1)


def _m_tilde1_search(M, E, delta, p):
    M = _maximal(M, p)
    bound = elementary_divisor_type(M, p)
    bound = sum(bound[1])
    Md = M
    for m in range(bound + 1):
        if is_invariant(Md, E, p):
            return m
        Md = Md @ delta.delta
    raise AssertionError("no invariant M delta^m within the proven bound")


def m_tilde1(M, E, delta=None, p=None, method="both"):
    """Least ``m >= 0`` such that ``M delta^m`` spans an invariant lattice.

    ``method`` is ``"search"``, ``"closed"`` or ``"both"`` (default; the
    closed form and the direct search must agree).
    """
    if p is None:
        raise ValueError("p is required")
    delta = delta or delta_matrix(E, p)
    if method == "closed":
        return _m_tilde1_closed(M, E, p)
    if method == "search":
        return _m_tilde1_search(M, E, delta, p)
    a = _m_tilde1_search(M, E, delta, p)
    b = _m_tilde1_v1(M, E, p)
    c = _m_tilde1_closed(M, E, p)
    if not a == b == c:
        raise AssertionError(f"m~1 disagreement: search {a}, v1 {b}, closed {c}")
    return a


def m2(M, E, p):
    """Valuation of the last ``n_c`` columns of the maximal representative."""
    if E.grading is None:
        raise ValueError("grading required")
    M = _maximal(M, p)
    nc = E.grading[-1]
    n = M.nrows
    vals = [valuation_int(M[r, s], p) for r in range(n) for s in range(n - nc, n) if M[r, s]]
    return min(vals) if vals else math.inf


def weight_w(M, E, p, delta=None):
    delta = delta or delta_matrix(E, p)
    w = (delta.c - 1) * m_tilde1(M, E, delta, p) - m2(M, E, p)
    if w < 0:
        raise AssertionError(f"negative weight {w}")
    return w


# -- A and the xi identity ---------------------------------------------------

def a_triangle_series(E, p, K, delta=None, method="both"):
    """Coefficients ``t^0..t^K`` of ``sum |L : Lambda_max|^{-s} q^{-s n w}``.

    Runs over maximal HNF lattices of index ``p^k <= p^K``; ``w >= 0``
    makes the truncation exact.
    """
    delta = delta or delta_matrix(E, p)
    if delta.c < 2:
        raise ValueError("the weighted series needs class c >= 2")
    n = E.rank
    out = [0] * (K + 1)
    for k in range(K + 1):
        for M in enumerate_sublattices(n, p, k):
            if valuation(M, p) != 0:
                continue
            mt = m_tilde1(M, E, delta, p, method)
            w = (delta.c - 1) * mt - m2(M, E, p)
            if w < 0:
                raise AssertionError(f"negative weight at {M}")
            j = k + n * w
            if j <= K:
                out[j] += 1
    return out


def xi_factor(n, delta):
    """``(1 - t^{sum(n - N_i)}) / ((1 - t^n)(1 - t^{(c-1) n}))``."""
    c = delta.c
    return (1 - T_ ** delta.sum_coN) / ((1 - T_ ** n) * (1 - T_ ** ((c - 1) * n)))


@dataclass
class XiReport:
    ok: bool
    zeta: list
    a_series: list
    predicted: list
    first_failure: int = None

    def __bool__(self):
        return self.ok


def _series_product(fac, a, K):
    s = [c.constant() for c in fac.series_in_t(K)]
    return [sum(s[i] * a[j - i] for i in range(j + 1)) for j in range(K + 1)]


def verify_xi_identity(E, p, K, **kw):
    """Compare brute-force ``zeta`` with ``xi / (1 - t^n) * A`` to degree ``K``."""
    delta = delta_matrix(E, p)
    a = a_triangle_series(E, p, K, delta)
    z = zeta_series_bruteforce(E, p, K, **kw)
    pred = [int(x) for x in _series_product(xi_factor(E.rank, delta), a, K)]
    bad = next((j for j in range(K + 1) if pred[j] != z[j]), None)
    return XiReport(bad is None, z, a, pred, bad)


def check_delta_stability(E, p, K, samples=8):
    """``v(M) = v(M delta)`` for all invariant ``M`` of index ``<= p^K``.

    Also checks on a few invariant maximal lattices that ``M delta^m``
    stays maximal with index multiplied by ``p^{m sum N_i}``.
    """
    if not E.generators:
        return True
    delta = delta_matrix(E, p)
    n = E.rank
    seen = 0
    for k in range(K + 1):
        for M in enumerate_sublattices(n, p, k):
            if not is_invariant(M, E, p):
                continue
            v = valuation(M, p)
            if valuation(M @ delta.delta, p) != v:
                return False
            if v == 0 and seen < samples:
                seen += 1
                Md = M
                for m in range(1, 4):
                    Md = Md @ delta.delta
                    if valuation(Md, p) != 0 or det(Md) != det(M) * p ** (m * delta.sum_N):
                        return False
    return True
