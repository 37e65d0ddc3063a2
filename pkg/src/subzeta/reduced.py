"""Chain cones ``C_lambda`` and their Hilbert series.

A point of ``C_lambda`` is ``(n_0; n_{i1}, ..., n_{i lambda_i})_i`` with
nonnegative entries and, for every chain ``i``,
``min(n_0, n_{i1}) >= n_{i2} >= ... >= n_{i lambda_i}``.  Coordinates are
listed as ``n_0`` followed by the chains in order.
"""

from dataclasses import dataclass
from math import comb

from .funeq import check_palindromy_T
from .ratfun import RatFun2, one, t as T

__all__ = [
    "Partition", "cone_contains", "interior_contains", "ConeSeries",
    "hilbert_series_exact", "hilbert_series_truncated", "minimal_interior_vectors",
    "near_rectangle", "ReducedFEReport", "check_reduced_fe", "partitions",
]


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        if not p or any(x < 1 for x in p) or any(a < b for a, b in zip(p, p[1:])):
            raise ValueError(f"invalid partition {p}: parts must be positive and descending")
        object.__setattr__(self, "parts", p)

    @classmethod
    def parse(cls, text):
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"invalid partition {text!r}: {exc}") from None

    @property
    def dim(self):
        return 1 + sum(self.parts)

    @property
    def is_near_rectangle(self):
        return near_rectangle(self)[0]

    def __str__(self):
        return ",".join(map(str, self.parts))


def _as_partition(lam):
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def partitions(size):
    """All partitions of ``size`` in descending-part form."""
    def rec(rest, cap):
        if rest == 0:
            yield ()
            return
        for x in range(min(rest, cap), 0, -1):
            for tail in rec(rest - x, x):
                yield (x,) + tail
    return [Partition(p) for p in rec(size, size)]


def _chains(lam, v):
    v = tuple(v)
    if len(v) != lam.dim:
        raise ValueError(f"vector has length {len(v)}, expected {lam.dim}")
    out, pos = [], 1
    for m in lam.parts:
        out.append(v[pos:pos + m])
        pos += m
    return v[0], out


def _member(lam, v, strict):
    head, chains = _chains(_as_partition(lam), v)
    low = (lambda x: x > 0) if strict else (lambda x: x >= 0)
    ge = (lambda a, b: a > b) if strict else (lambda a, b: a >= b)
    if not low(head) or not all(low(x) for ch in chains for x in ch):
        return False
    for ch in chains:
        if len(ch) > 1 and not (ge(head, ch[1]) and ge(ch[0], ch[1])):
            return False
        if any(not ge(a, b) for a, b in zip(ch[1:], ch[2:])):
            return False
    return True


def cone_contains(lam, v):
    return _member(lam, v, False)


def interior_contains(lam, v):
    return _member(lam, v, True)


# -- exact Hilbert series --------------------------------------------------
#
# A quasi-geometric function of the head a = n_0 is a dict {e: c(T)} standing
# for sum_e c(T) T^{e a}.

def _gauss_in_u(j):
    """Coefficients in ``u`` of ``prod_{i=1}^{j} (1 - T^i u) / (1 - T^i)``."""
    poly = [one]
    for i in range(1, j + 1):
        new = [RatFun2(0)] * (len(poly) + 1)
        for e, c in enumerate(poly):
            new[e] = new[e] + c
            new[e + 1] = new[e + 1] - c * T ** i
        poly = new
    den = one
    for i in range(1, j + 1):
        den = den * (1 - T ** i)
    return [c / den for c in poly]


def _chain_series(m):
    """Sum over one chain of length ``m`` as a quasi-geometric function of the head."""
    if m == 1:
        return {0: one / (1 - T)}
    out = {}
    # n_{i1} >= b contributes T^b / (1-T); the tail below b is [b+m-2 choose m-2]_T
    for e, c in enumerate(_gauss_in_u(m - 2)):
        if not c:
            continue
        r = T ** (e + 2)
        # sum_{b=0}^{a} r^b = 1/(1-r) - r/(1-r) * T^{(e+2) a}
        base = c / (1 - T)
        out[0] = out.get(0, RatFun2(0)) + base / (1 - r)
        out[e + 2] = out.get(e + 2, RatFun2(0)) - base * r / (1 - r)
    return out


def _mul(f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            out[e1 + e2] = out.get(e1 + e2, RatFun2(0)) + c1 * c2
    return {e: c for e, c in out.items() if c}


@dataclass
class ConeSeries:
    partition: Partition
    exact: RatFun2

    def coefficients(self, K):
        return [int(c.constant()) for c in self.exact.series_in_t(K)]

    def truncated(self, K):
        return hilbert_series_truncated(self.partition, K)

    def verify(self, K):
        return self.coefficients(K) == self.truncated(K)

    def format(self):
        return self.exact.format(names=("q", "T"))


def hilbert_series_exact(lam):
    """``sum_{v in C_lambda} T^{|v|}`` as a rational function of ``T``."""
    lam = _as_partition(lam)
    f = {0: one}
    for m in lam.parts:
        f = _mul(f, _chain_series(m))
    # sum over the head: sum_a T^a T^{e a} = 1/(1 - T^{e+1})
    H = RatFun2(0)
    for e, c in f.items():
        H = H + c / (1 - T ** (e + 1))
    return ConeSeries(lam, H)


def hilbert_series_truncated(lam, K):
    """Lattice-point counts of ``C_lambda`` by coordinate sum ``0..K`` (nested loops)."""
    lam = _as_partition(lam)
    counts = [0] * (K + 1)
    parts = lam.parts

    def chain(ci, pos, prev, first, head, budget, used):
        # pos indexes within chain ci; prev is the previous entry
        if ci == len(parts):
            counts[used] += 1
            return
        m = parts[ci]
        if pos == m:
            chain(ci + 1, 0, None, None, head, budget, used)
            return
        if pos == 0:
            hi = budget
        elif pos == 1:
            hi = min(head, first, budget)
        else:
            hi = min(prev, budget)
        for x in range(hi + 1):
            chain(ci, pos + 1, x, x if pos == 0 else first, head, budget - x, used + x)

    for a in range(K + 1):
        chain(0, 0, None, None, a, K - a, a)
    return counts


# -- interior ----------------------------------------------------------------

def _interior_points(lam, bound):
    """Interior points with all coordinates in ``[1, bound]``."""
    parts = lam.parts
    out = []

    def rec(ci, pos, prev, first, head, acc):
        if ci == len(parts):
            out.append(tuple(acc))
            return
        m = parts[ci]
        if pos == m:
            rec(ci + 1, 0, None, None, head, acc)
            return
        if pos == 0:
            hi = bound
        elif pos == 1:
            hi = min(head, first) - 1
        else:
            hi = prev - 1
        for x in range(1, hi + 1):
            acc.append(x)
            rec(ci, pos + 1, x, x if pos == 0 else first, head, acc)
            acc.pop()

    for a in range(1, bound + 1):
        rec(0, 0, None, None, a, [a])
    return out


def minimal_interior_vectors(lam, bound=None):
    """Interior integral points ``beta`` with no interior ``gamma != beta``, ``beta - gamma`` in the cone."""
    lam = _as_partition(lam)
    bound = bound if bound is not None else lam.parts[0] + 1
    pts = _interior_points(lam, bound)
    mins = []
    for b in pts:
        if not any(g != b and cone_contains(lam, [x - y for x, y in zip(b, g)]) for g in pts):
            mins.append(b)
    return sorted(mins)


def near_rectangle(lam):
    """``(True, (c, r1, r2))`` for ``lambda = (c^r1, 1^r2)``, else ``(False, None)``.

    All-ones partitions are read with ``c = 1``, ``r1 = r``, ``r2 = 0``.
    """
    parts = _as_partition(lam).parts
    c = parts[0]
    r1 = sum(1 for x in parts if x == c)
    rest = parts[r1:]
    if any(x != 1 for x in rest):
        return False, None
    return True, (c, r1, len(rest))


@dataclass
class ReducedFEReport:
    partition: Partition
    near_rectangle: bool
    decomposition: tuple
    fe: tuple
    expected: tuple

    @property
    def ok(self):
        if (self.fe is not None) != self.near_rectangle:
            return False
        return not self.near_rectangle or self.fe == self.expected

    def __bool__(self):
        return self.ok


def check_reduced_fe(lam):
    lam = _as_partition(lam)
    H = hilbert_series_exact(lam).exact
    fe = check_palindromy_T(H)
    near, dec = near_rectangle(lam)
    expected = None
    if near:
        c, r1, r2 = dec
        expected = ((-1) ** (1 + c * r1 + r2), c + comb(c + 1, 2) * r1 + r2)
    return ReducedFEReport(lam, near, dec, fe, expected)
