"""Exact bivariate rational functions in ``q`` and ``t = q^{-s}``.

Values are stored as a coprime numerator/denominator pair of sparse
polynomials over QQ (sympy's low-level polynomial rings), with the
denominator made monic for the lexicographic order ``q > t``.  Two equal
values therefore always have identical canonical forms, which is what the
functional-equation checks rely on.
"""

from fractions import Fraction
from functools import reduce
from math import gcd

from sympy import QQ, factor_list
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

__all__ = ["RatFun2", "R", "q", "t", "one", "zero", "product"]

R, _q, _t = ring("q,t", QQ, lex)


def _poly(x):
    if isinstance(x, Fraction):
        return R(QQ(x.numerator, x.denominator))
    return R(x)


class RatFun2:
    """A rational function ``num(q,t)/den(q,t)`` in canonical form.

    Construct from polynomials with ``RatFun2(num, den)`` or use the module
    level generators ``q`` and ``t`` and ordinary arithmetic.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1):
        num, den = _poly(num), _poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            num, den = R.zero, R.one
        else:
            g = num.gcd(den)
            if g != 1:
                num, den = num.exquo(g), den.exquo(g)
            lc = den.LC
            if lc != 1:
                num, den = num.quo_ground(lc), den.monic()
        self.num = num
        self.den = den
        self._hash = None

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFun2):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun2(_poly(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFun2(self.num + other.num, self.den)
        return RatFun2(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun2(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFun2(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun2(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, e):
        if not isinstance(e, int):
            raise TypeError("integer exponents only")
        if e >= 0:
            return RatFun2(self.num ** e, self.den ** e)
        if not self.num:
            raise ZeroDivisionError("zero to a negative power")
        return RatFun2(self.den ** -e, self.num ** -e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.items())),
                               tuple(sorted(self.den.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # -- structure -------------------------------------------------------
    def is_polynomial(self):
        return self.den == 1

    def uses_q(self):
        return self.num.degree(0) > 0 or self.den.degree(0) > 0

    def uses_t(self):
        return self.num.degree(1) > 0 or self.den.degree(1) > 0

    def deg_t(self):
        if not self.num:
            raise ValueError("degree of zero")
        return self.num.degree(1) - self.den.degree(1)

    def deg_q(self):
        if not self.num:
            raise ValueError("degree of zero")
        return self.num.degree(0) - self.den.degree(0)

    def substitute_inverse(self):
        """Return ``f(1/q, 1/t)`` as a canonical rational function."""
        if not self.num:
            return self
        a_q, a_t = self.num.degree(0), self.num.degree(1)
        b_q, b_t = self.den.degree(0), self.den.degree(1)
        a_q, a_t = max(a_q, 0), max(a_t, 0)
        num = _reverse(self.num, a_q, a_t)
        den = _reverse(self.den, b_q, b_t)
        # f(1/q,1/t) = q^(b_q-a_q) t^(b_t-a_t) num/den
        eq, et = b_q - a_q, b_t - a_t
        num = num * _monomial(max(eq, 0), max(et, 0))
        den = den * _monomial(max(-eq, 0), max(-et, 0))
        return RatFun2(num, den)

    def evaluate(self, q=None, t=None):
        """Substitute numbers for ``q`` and/or ``t``.

        Returns a ``Fraction`` if both are given, otherwise a RatFun2.
        """
        num, den = self.num, self.den
        if q is not None:
            num, den = num.subs(_q, _qq(q)), den.subs(_q, _qq(q))
        if t is not None:
            num, den = num.subs(_t, _qq(t)), den.subs(_t, _qq(t))
        if not den:
            raise ZeroDivisionError("pole at the evaluation point")
        out = RatFun2(num, den)
        if q is not None and t is not None:
            return out.constant()
        return out

    def constant(self):
        if self.uses_q() or self.uses_t():
            raise ValueError(f"{self} is not constant")
        return _frac(self.num.coeff(1)) / _frac(self.den.coeff(1))

    def t_coefficients(self, which="num"):
        """Split the numerator or denominator into Q[q]-coefficients by t-degree."""
        poly = self.num if which == "num" else self.den
        deg = max(poly.degree(1), 0)
        out = [R.zero] * (deg + 1)
        for (i, j), c in poly.items():
            out[j] = out[j] + R({(i, 0): c})
        return out

    def leading_limit(self, B):
        """``lim_{t->oo} t^B f(q,t)``; requires ``deg_t(f) == -B``."""
        if self.deg_t() != -B:
            raise ValueError(f"deg_t is {self.deg_t()}, not {-B}")
        n = self.t_coefficients("num")[-1]
        d = self.t_coefficients("den")[-1]
        return RatFun2(n, d)

    def series_in_t(self, K):
        """Coefficients of t^0..t^K of the expansion at t = 0.

        Each coefficient is returned as a t-free RatFun2 (a polynomial in q
        whenever ``den(q, 0)`` is a constant).
        """
        nc = self.t_coefficients("num")
        dc = self.t_coefficients("den")
        if not dc[0]:
            raise ValueError("pole at t = 0; no power series expansion")
        d0 = RatFun2(dc[0])
        dcs = [RatFun2(c) for c in dc]
        out = []
        for k in range(K + 1):
            acc = RatFun2(nc[k]) if k < len(nc) else RatFun2(0)
            for j in range(1, min(k, len(dcs) - 1) + 1):
                if dcs[j]:
                    acc = acc - dcs[j] * out[k - j]
            out.append(acc / d0)
        return out

    # -- serialization ---------------------------------------------------
    def to_json(self):
        return {"num": _poly_json(self.num), "den": _poly_json(self.den)}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(_poly_from_json(data["num"]), _poly_from_json(data["den"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed rational function: {exc}") from exc

    def __repr__(self):
        return f"RatFun2({self})"

    def __str__(self):
        return self.format()

    def format(self, names=("q", "t")):
        """Human-readable form with a factored denominator, e.g. ``1/((1-t)*(1-q*t^2))``.

        When possible the denominator is written as a product of binomials
        ``1 - monomial`` (numerator adjusted); otherwise its irreducible
        factors are shown.
        """
        num, den = self.num, self.den
        if den == 1:
            return _poly_str(num, names)
        binom = _binomial_denominator(den)
        if binom is not None:
            return _binomial_str(num, den, binom, names)
        return self._format_factored(names)

    def _format_factored(self, names):
        num, den = self.num, self.den
        coeff, facs = factor_list(den.as_expr(), *R.symbols)
        parts, sign = [], Fraction(1)
        sign *= _frac_expr(coeff)
        for f, e in facs:
            fp = R(f)
            # prefer the (1 - ...) orientation
            c0 = fp.coeff(1)
            if c0 < 0 or (c0 == 0 and fp.LC < 0):
                fp = -fp
                if e % 2:
                    sign = -sign
            s = _poly_str(fp, names)
            if len(fp.terms()) > 1:
                s = f"({s})"
            parts.append(s if e == 1 else f"{s}^{e}")
        num_poly = num.quo_ground(QQ(sign.numerator, sign.denominator))
        ns = _poly_str(num_poly, names)
        if len(num_poly.terms()) > 1:
            ns = f"({ns})"
        ds = "*".join(parts)
        if len(parts) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"


_MAX_ORDER = 60


def _collinear(poly):
    """``(a, b, P)`` with ``poly = P(q^a t^b)``, ``P`` given as {degree: coeff}, or None."""
    exps = [m for m in poly.keys() if m != (0, 0)]
    if not exps or poly.coeff(1) == 0:
        return None
    a, b = exps[0][0] // gcd(*exps[0]), exps[0][1] // gcd(*exps[0])
    P = {0: poly.coeff(1)}
    for (i, j), c in poly.items():
        if (i, j) == (0, 0):
            continue
        if i * b != j * a:
            return None
        k = i // a if a else j // b
        P[k] = c
    return a, b, P


def _divides_cyclic(P, m):
    # P(x) | 1 - x^m  over QQ
    x = _t
    num = R.one - x ** m
    p = R({(0, k): c for k, c in P.items()})
    return not num.rem(p)


def _binomial_denominator(den):
    """Exponent vectors ``(a, b, m)`` of binomials ``1 - (q^a t^b)^m`` whose product ``den`` divides."""
    _, facs = factor_list(den.as_expr(), *R.symbols)
    need = []
    for f, e in facs:
        info = _collinear(R(f))
        if info is None:
            return None
        a, b, P = info
        m = next((m for m in range(1, _MAX_ORDER + 1) if _divides_cyclic(P, m)), None)
        if m is None:
            return None
        need += [(a, b, P, m)] * e
    out = []
    while need:
        need.sort(key=lambda x: x[3])
        a, b, P, m = need.pop()
        out.append((a, b, m))
        rest = []
        used = {(a, b, tuple(sorted(P.items())))}
        for item in need:
            key = (item[0], item[1], tuple(sorted(item[2].items())))
            if (item[0], item[1]) == (a, b) and key not in used and _divides_cyclic(item[2], m):
                used.add(key)
                continue
            rest.append(item)
        need = rest
    return out


def _binomial_str(num, den, binom, names):
    full = R.one
    for a, b, m in binom:
        full = full * (R.one - _monomial(a * m, b * m))
    num = num * full.exquo(den)
    counts = {}
    for a, b, m in binom:
        counts[(a * m, b * m)] = counts.get((a * m, b * m), 0) + 1
    parts = []
    for (i, j), e in sorted(counts.items(), key=lambda it: (it[0][0] + it[0][1], it[0][1])):
        s = f"(1-{_mono_str(i, j, names)})"
        parts.append(s if e == 1 else f"{s}^{e}")
    ns = _poly_str(num, names)
    if len(num.terms()) > 1:
        ns = f"({ns})"
    ds = "*".join(parts)
    if len(parts) > 1:
        ds = f"({ds})"
    return f"{ns}/{ds}"


def _qq(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def _frac(c):
    c = QQ.convert(c)
    return Fraction(int(QQ.numer(c)), int(QQ.denom(c)))


def _frac_expr(e):
    return Fraction(int(e.p), int(e.q))


def _monomial(i, j):
    return R({(i, j): QQ(1)})


def _reverse(poly, dq, dt):
    return R({(dq - i, dt - j): c for (i, j), c in poly.items()})


def _poly_json(poly):
    out = []
    for (i, j), c in sorted(poly.items()):
        fc = _frac(c)
        out.append([fc.numerator, fc.denominator, i, j])
    return out


def _poly_from_json(items):
    terms = {}
    for entry in items:
        cn, cd, i, j = entry
        if not all(isinstance(v, int) for v in entry) or cd == 0 or i < 0 or j < 0:
            raise ValueError(f"bad monomial {entry!r}")
        terms[(i, j)] = terms.get((i, j), QQ(0)) + QQ(cn, cd)
    return R(terms) if terms else R.zero


def _mono_str(i, j, names):
    out = []
    for v, e in zip(names, (i, j)):
        if e == 1:
            out.append(v)
        elif e > 1:
            out.append(f"{v}^{e}")
    return "*".join(out)


def _poly_str(poly, names):
    if not poly:
        return "0"
    items = sorted(poly.items(), key=lambda it: (it[0][0] + it[0][1], it[0][1], it[0][0]))
    s = ""
    for (i, j), c in items:
        c = _frac(c)
        mono = _mono_str(i, j, names)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if not s:
            s = f"-{body}" if neg else body
        else:
            s += f"-{body}" if neg else f"+{body}"
    return s


q = RatFun2(_q)
t = RatFun2(_t)
one = RatFun2(1)
zero = RatFun2(0)


def product(items):
    return reduce(lambda a, b: a * b, items, one)
