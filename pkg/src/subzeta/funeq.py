"""Functional equations, degree and limit checks, the value at ``s = 0``,
uniform-coefficient interpolation, and palindromy of univariate series.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .ratfun import RatFun2, one, product, q, t

__all__ = [
    "check_funeq", "DegreeReport", "check_degree_conjecture", "check_s0",
    "interpolate_uniform", "check_palindromy_T",
]


def check_funeq(W, shape):
    """Exact test of ``W(1/q, 1/t) == sign q^qexp t^texp W``."""
    if not W:
        raise ValueError("W must be nonzero")
    return W.substitute_inverse() == shape.sign * q ** shape.qexp * t ** shape.texp * W


@dataclass
class DegreeReport:
    deg_t_ok: bool
    limit_ok: bool
    deg_q_ok: bool
    deg_t: int
    deg_q: int
    limit: RatFun2 = None

    def __bool__(self):
        return self.deg_t_ok and self.limit_ok and self.deg_q_ok


def check_degree_conjecture(W, n, Nlist):
    """``deg_t W = -sum N_i``, ``t^B W -> (-1)^n q^{-C(n,2)}`` and ``deg_q W = -C(n,2)``."""
    B = sum(Nlist)
    dt, dq = W.deg_t(), W.deg_q()
    limit = W.leading_limit(B) if dt == -B else None
    want = (-1) ** n * (one / q) ** comb(n, 2)
    return DegreeReport(dt == -B, limit == want, dq == -comb(n, 2), dt, dq, limit)


def check_s0(W, n):
    """``((1 - t) W)|_{t=1} == 1 / prod_{i=1}^{n-1} (1 - q^i)``.

    Raises ValueError unless ``W`` has a simple pole along ``t = 1``.
    """
    try:
        W.evaluate(t=1)
    except ZeroDivisionError:
        pass
    else:
        raise ValueError("no pole at t = 1")
    try:
        val = ((1 - t) * W).evaluate(t=1)
    except ZeroDivisionError:
        raise ValueError("pole of order > 1 at t = 1") from None
    return val == one / product(1 - q ** i for i in range(1, n))


def interpolate_uniform(samples, degree_bound):
    """Polynomial in ``q`` of degree ``<= degree_bound`` through ``{p: value}``.

    The first ``degree_bound + 1`` primes (in increasing order) determine
    the polynomial; every further prime is a held-out check, and a
    mismatch raises ValueError.
    """
    pts = sorted((int(p), Fraction(v)) for p, v in samples.items())
    m = degree_bound + 1
    if len(pts) < m:
        raise ValueError(f"need {m} samples for degree {degree_bound}, got {len(pts)}")
    base, extra = pts[:m], pts[m:]
    # Newton divided differences, exact
    xs = [x for x, _ in base]
    coef = [y for _, y in base]
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * m          # power basis, ascending
    for i in range(m - 1, -1, -1):
        # poly = poly * (q - xs[i]) + coef[i]
        new = [Fraction(0)] * m
        for d, c in enumerate(poly):
            if c:
                if d + 1 < m:
                    new[d + 1] += c
                new[d] -= c * xs[i]
        new[0] += coef[i]
        poly = new

    def value(x):
        return sum(c * x ** d for d, c in enumerate(poly))

    for x, y in extra:
        if value(x) != y:
            raise ValueError(f"held-out prime {x}: interpolant gives {value(x)}, count is {y}")
    out = RatFun2(0)
    for d, c in enumerate(poly):
        if c:
            out = out + RatFun2(c) * q ** d
    return out


def check_palindromy_T(H):
    """``(sign, k)`` with ``H(1/T) = sign T^k H(T)``, or ``None``.

    ``H`` is a RatFun2 in the second variable only.
    """
    if not H:
        raise ValueError("H must be nonzero")
    if H.uses_q():
        raise ValueError("expected a function of T alone")
    ratio = H.substitute_inverse() / H
    num, den = ratio.num, ratio.den
    if len(num.terms()) != 1 or len(den.terms()) != 1:
        return None
    (mn, cn), = num.terms()
    (md, cd), = den.terms()
    c = Fraction(int(cn.numerator), int(cn.denominator)) / Fraction(int(cd.numerator), int(cd.denominator))
    if c not in (1, -1):
        return None
    return int(c), mn[1] - md[1]
