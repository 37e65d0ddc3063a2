"""Closed-form local zeta functions and predicted functional-equation shapes.

Gaussian binomials and multinomials are returned as RatFun2 values in the
single variable ``q`` (read it as ``X``).
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .algebras import witt_ranks
from .ratfun import RatFun2, one, product, q, t

__all__ = [
    "zeta_c1", "gaussian_binomial", "gaussian_multinomial", "zeta_abelian_inert",
    "FEShape", "fe_shape_main", "fe_shape_free", "fe_shape_rectangle",
    "fe_shape_abelian", "fe_shape_sut", "invert_q", "FORMULAS",
]


def zeta_c1(n):
    """``prod_{i<n} 1/(1 - q^i t)``: all finite-index sublattices of a rank-``n`` lattice."""
    if n < 1:
        raise ValueError("n must be positive")
    return one / product(1 - q ** i * t for i in range(n))


def gaussian_binomial(a, b):
    if not 0 <= b <= a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    num = product(1 - q ** (a - b + i) for i in range(1, b + 1))
    den = product(1 - q ** i for i in range(1, b + 1))
    out = num / den
    assert out.is_polynomial()
    return out


def gaussian_multinomial(n, I):
    """Chain product ``prod_j [i_{j+1} choose i_j]`` over ``I = {i_1 < ... < i_l}``, ``i_{l+1} = n``."""
    I = tuple(I)
    if any(not 0 < i < n for i in I) or any(a >= b for a, b in zip(I, I[1:])):
        raise ValueError(f"{I} is not an increasing subset of [1, {n - 1}]")
    chain = I + (n,)
    return product(gaussian_binomial(chain[j + 1], chain[j]) for j in range(len(I)))


def invert_q(f):
    """``f(1/q)`` for a polynomial ``f`` in ``q`` alone."""
    if f.uses_t() or not f.is_polynomial():
        raise ValueError("expected a polynomial in q")
    coeffs = f.t_coefficients("num")[0]
    out = RatFun2(0)
    for (i, _), c in coeffs.items():
        out = out + RatFun2(c) * (one / q) ** i
    return out


def zeta_abelian_inert(n):
    """Ideal zeta function of ``M_(n)``: block-upper-right ``n x n`` matrices on rank ``2n``."""
    if n < 1:
        raise ValueError("n must be positive")
    x = {j: q ** (j * (2 * n - j)) * t ** (n + j) for j in range(1, n + 1)}
    total = RatFun2(0)
    for size in range(n):
        for I in combinations(range(1, n), size):
            term = invert_q(gaussian_multinomial(n, I))
            for i in I:
                term = term * x[i] / (1 - x[i])
            total = total + term
    return zeta_c1(n) / (1 - x[n]) * total


@dataclass(frozen=True)
class FEShape:
    """``W(1/q, 1/t) = sign * q^qexp * t^texp * W(q, t)``."""

    sign: int
    qexp: int
    texp: int

    def to_json(self):
        return {"sign": self.sign, "qexp": self.qexp, "texp": self.texp}

    @classmethod
    def parse(cls, text):
        parts = [int(x) for x in text.split(",")]
        if len(parts) != 3 or parts[0] not in (1, -1):
            raise ValueError(f"shape must be 'sign,qexp,texp', got {text!r}")
        return cls(*parts)


def fe_shape_main(n, Nlist):
    """Shape for rank ``n`` and coranks ``N_0, ..., N_{c-1}``."""
    return FEShape((-1) ** n, comb(n, 2), sum(Nlist))


def fe_shape_free(c, d):
    N = witt_ranks(c, d)
    return fe_shape_main(N[0], N[:-1])


def fe_shape_rectangle(c, r1, r2):
    n = 1 + c * r1 + r2
    return FEShape((-1) ** n, comb(n, 2), c + comb(c + 1, 2) * r1 + r2)


def fe_shape_abelian(n):
    return FEShape(1, comb(2 * n, 2), 3 * n)


def fe_shape_sut(n, blocks):
    """Block-diagonal unitriangular algebras; ``blocks`` are the block sizes."""
    if sum(blocks) != n:
        raise ValueError("block sizes must sum to n")
    return FEShape((-1) ** n, comb(n, 2), sum(comb(b + 1, 2) for b in blocks))


# name -> (constructor, predicted shape); both take the single integer n
FORMULAS = {
    "c1": (zeta_c1, lambda n: FEShape((-1) ** n, comb(n, 2), n)),
    "abelian-inert": (zeta_abelian_inert, fe_shape_abelian),
}
