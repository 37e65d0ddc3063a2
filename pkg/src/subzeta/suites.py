"""Named verification suites, runnable from the CLI (``subzeta verify``) and
from the test suite.  Each returns a :class:`SuiteResult`; expected values
are either hand-derived closed forms or come from an independent route
(formula vs brute force, exact series vs lattice-point enumeration).
"""

import time
from dataclasses import dataclass, field
from math import comb

from . import catalog
from .algebras import EndoSetup, centralizer_series, check_condition, witt_ranks
from .formulas import FEShape, fe_shape_abelian, zeta_abelian_inert, zeta_c1
from .funeq import check_degree_conjecture, check_funeq, check_s0, interpolate_uniform
from .intlinalg import IntMat
from .lattice_enum import (check_delta_stability, count_invariant, delta_matrix, m2,
                           m_tilde1, verify_xi_identity, weight_w)
from .reduced import (check_reduced_fe, hilbert_series_exact, hilbert_series_truncated,
                      minimal_interior_vectors, partitions)

__all__ = ["SuiteResult", "SUITES", "run_suite"]


@dataclass
class SuiteResult:
    name: str
    ok: bool = True
    lines: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, cond, msg):
        self.lines.append(("ok   " if cond else "FAIL ") + msg)
        self.ok = self.ok and bool(cond)
        return cond

    def to_json(self):
        return {"check": self.name, "ok": self.ok, "details": self.lines,
                "seconds": round(self.seconds, 3)}


def _series_at(W, p, K):
    return [int(c.evaluate(q=p).constant()) for c in W.series_in_t(K)]


def enumeration(res, threads=None):
    for n in (2, 3, 4):
        A = EndoSetup(n, (), (n,), f"abelian:{n}")
        for p in (2, 3):
            want = _series_at(zeta_c1(n), p, 5)
            got = [count_invariant(A, p, k, threads=threads) for k in range(6)]
            res.check(got == want, f"n={n} p={p}: counts {got}")


def heisenberg_counts(res, threads=None):
    H = catalog.heisenberg()
    for p in (2, 3, 5):
        want = [1, p + 1, p * p + p + 1, p ** 3 + 2 * p * p + p + 1]
        got = [count_invariant(H, p, k, threads=threads) for k in range(4)]
        res.check(got == want, f"p={p}: {got}")


def funeq_c1(res, threads=None):
    for n in range(1, 7):
        res.check(check_funeq(zeta_c1(n), FEShape((-1) ** n, comb(n, 2), n)),
                  f"n={n}: W(1/q,1/t) = (-1)^{n} q^{comb(n, 2)} t^{n} W")


def abelian_inert(res, threads=None):
    for n in (1, 2, 3):
        sh = fe_shape_abelian(n)
        res.check(check_funeq(zeta_abelian_inert(n), sh), f"n={n}: shape {sh.to_json()}")
    for n, K in ((1, 6), (2, 4)):
        E = catalog.m_f((n,))
        W = zeta_abelian_inert(n)
        for p in (2, 3):
            want = _series_at(W, p, K)
            got = [count_invariant(E, p, k, threads=threads) for k in range(K + 1)]
            res.check(got == want, f"M_({n}) p={p} k<={K}: {got}")


def xi_identity(res, threads=None):
    cases = [(catalog.heisenberg(), 2, 4), (catalog.heisenberg(), 3, 4),
             (catalog.maximal_class(3), 2, 3)]
    for E, p, K in cases:
        rep = verify_xi_identity(E, p, K, threads=threads)
        res.check(rep.ok, f"{E.name} p={p} K={K}: zeta {rep.zeta}, A {rep.a_series}")
        res.check(check_delta_stability(E, p, K), f"{E.name} p={p} K={K}: delta-stable")


def worked_example(res, threads=None):
    H = catalog.heisenberg()
    d = delta_matrix(H, 2)
    M1 = IntMat([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    M2 = IntMat([[1, 0, 1], [0, 1, 1], [0, 0, 2]])
    got = (m_tilde1(M1, H, d, 2), m_tilde1(M2, H, d, 2), weight_w(M1, H, 2, d), weight_w(M2, H, 2, d))
    res.check(got == (1, 1, 0, 1), f"m~1(M1), m~1(M2), w(M1), w(M2) = {got}")
    res.check((m2(M1, H, 2), m2(M2, H, 2)) == (1, 0), "m2(M1), m2(M2) = (1, 0)")


def witt_hall(res, threads=None):
    for c, d in ((2, 2), (2, 3), (3, 2)):
        N = centralizer_series(catalog.free_nilpotent(c, d)).N
        res.check(N == tuple(witt_ranks(c, d)), f"f_{{{c},{d}}}: N = {N}")


CONDITION_OK = (["heisenberg", "M:2", "M:3", "M:4", "M:5", "L:3,3", "grenham:1", "grenham:2",
                 "grenham:3", "mf:1", "mf:2", "mf:1,1", "mf:3", "mf:2,1", "u:2", "u:3", "u:2,1",
                 "u:1,1"]
                + [f"free:{c},{d}" for c, d in ((2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2))])


def condition(res, threads=None):
    for name in CONDITION_OK:
        v = check_condition(catalog.by_name(name))
        res.check(v is None, f"{name}: {'Ok' if v is None else v}")
    v = check_condition(catalog.fil4())
    res.check(v is not None and v.generator == 2 and v.entry == (3, 5) and v.block == (2, 4),
              f"fil4: {v}")
    v = check_condition(catalog.g66())
    res.check(v is not None and v.generator == 3, f"g66: {v}")


def reduced_zeta(res, threads=None):
    for lam in [(1,), (2,), (3,), (2, 1), (2, 2), (3, 2), (3, 3)]:
        s = hilbert_series_exact(lam)
        res.check(s.coefficients(12) == hilbert_series_truncated(lam, 12),
                  f"{lam}: {s.format()} matches lattice points to T^12")
    bad = [str(l) for size in range(1, 8) for l in partitions(size) if not check_reduced_fe(l)]
    res.check(not bad, f"reduced FE <=> near rectangle on all partitions of size <= 7 {bad or ''}")


def interior(res, threads=None):
    b4 = minimal_interior_vectors((4,))
    res.check(b4 == [(4, 4, 3, 2, 1)], f"(4): {b4}")
    b32 = minimal_interior_vectors((3, 2))
    res.check(len(b32) >= 2, f"(3,2): {b32}")


def degree(res, threads=None):
    for n in range(1, 7):
        W = zeta_c1(n)
        res.check(bool(check_degree_conjecture(W, n, [n])), f"c1 n={n}: degrees and limit")
        res.check(check_s0(W, n), f"c1 n={n}: value at s=0")
    for n in (1, 2, 3):
        W = zeta_abelian_inert(n)
        res.check(bool(check_degree_conjecture(W, 2 * n, [2 * n, n])),
                  f"abelian-inert n={n}: degrees and limit")
        res.check(check_s0(W, 2 * n), f"abelian-inert n={n}: value at s=0")


PRIMES_12 = (2, 3, 5, 7, 11, 13, 17, 19)


def q_equals_one(res, threads=None):
    E = catalog.l_lambda((2,))
    counts = {p: [count_invariant(E, p, k, threads=threads) for k in range(4)] for p in PRIMES_12}
    vals = []
    for k in range(4):
        try:
            P = interpolate_uniform({p: counts[p][k] for p in PRIMES_12}, 2 * k)
        except ValueError as exc:
            res.check(False, f"k={k}: {exc}")
            return
        vals.append(int(P.evaluate(q=1).constant()))
        res.check(True, f"k={k}: a_(p^{k}) = {P}")
    cone = hilbert_series_exact((2,)).coefficients(3)
    res.check(vals == cone == [1, 2, 3, 5], f"at q=1: {vals}; cone: {cone}")


SUITES = {
    "enumeration": (1, enumeration),
    "heisenberg": (2, heisenberg_counts),
    "funeq-c1": (3, funeq_c1),
    "abelian-inert": (4, abelian_inert),
    "xi-identity": (5, xi_identity),
    "worked-example": (6, worked_example),
    "witt-hall": (7, witt_hall),
    "condition": (8, condition),
    "reduced": (9, reduced_zeta),
    "interior": (10, interior),
    "degree": (11, degree),
    "q-equals-one": (12, q_equals_one),
}


def run_suite(name, threads=None):
    if name not in SUITES:
        raise KeyError(name)
    res = SuiteResult(name)
    t0 = time.perf_counter()
    try:
        SUITES[name][1](res, threads)
    except Exception as exc:  # a crash is a failed suite, with the reason kept
        res.check(False, f"raised {type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t0
    return res
