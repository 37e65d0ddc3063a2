"""Exact integer linear algebra on small dense matrices.

Conventions: lattices are row spans, endomorphisms act on row vectors from
the right.  All entries are Python integers, so nothing ever overflows.
"""

from fractions import Fraction
from math import gcd, inf

__all__ = [
    "IntMat", "identity", "diag", "zeros", "hnf", "echelon", "snf",
    "snf_with_transform", "det", "adjugate", "valuation", "valuation_int",
    "kernel_int", "saturate", "row_span_contains", "solve_rational",
    "complete_basis", "is_unimodular", "inverse_unimodular",
]


class IntMat:
    """Immutable dense integer matrix (row-major)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMat) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"IntMat({[list(r) for r in self.rows]})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def T(self):
        return IntMat(zip(*self.rows), self.nrows) if self.nrows else IntMat((), 0)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMat(((sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
                      other.ncols)

    def __mul__(self, k):
        return IntMat(((k * x for x in r) for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __add__(self, other):
        return IntMat(((a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                      self.ncols)

    def __sub__(self, other):
        return self + (-1) * other

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)


def identity(n):
    return IntMat(((1 if i == j else 0 for j in range(n)) for i in range(n)), n)


def zeros(m, n):
    return IntMat(((0,) * n for _ in range(m)), n)


def diag(entries):
    entries = list(entries)
    n = len(entries)
    return IntMat(((entries[i] if i == j else 0 for j in range(n)) for i in range(n)), n)


def _as_lists(M):
    return [list(r) for r in M.rows]


def echelon(M):
    """Row echelon form by unimodular row operations.

    Returns ``(E, U, pivots)`` with ``E = U @ M``, ``U`` unimodular, pivots
    positive and entries above each pivot reduced into ``[0, pivot)``.
    """
    A = _as_lists(M)
    m, n = M.nrows, M.ncols
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        # gcd-combine rows r.. in column c
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(A[i][c]))
            if k != r:
                A[r], A[k] = A[k], A[r]
                U[r], U[k] = U[k], U[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    f = A[i][c] // A[r][c]
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                    U[i] = [a - f * b for a, b in zip(U[i], U[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if not A[r][c]:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
            U[r] = [-a for a in U[r]]
        p = A[r][c]
        for i in range(r):
            f = A[i][c] // p
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                U[i] = [a - f * b for a, b in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return IntMat(A, n), IntMat(U, m), pivots


def hnf(M):
    """Row Hermite normal form with zero rows removed.

    For a full-rank square matrix this is upper triangular with positive
    diagonal and every above-diagonal entry in ``[0, diagonal of its column)``.
    """
    E, _, pivots = echelon(M)
    return IntMat(E.rows[:len(pivots)], M.ncols)


def rank(M):
    return len(echelon(M)[2])


def det(M):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("det of a non-square matrix")
    if n == 0:
        return 1
    A = _as_lists(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _minor(A, i, j):
    return IntMat([r[:j] + r[j + 1:] for k, r in enumerate(A) if k != i], len(A) - 1)


def adjugate(M):
    """Classical adjoint: ``M @ adjugate(M) == det(M) * I``."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("adjugate of a non-square matrix")
    if n == 1:
        return IntMat([[1]])
    d = det(M)
    if d != 0:
        # fraction-free Gauss-Jordan on [M | I]; adj = d * M^-1
        A = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(M.rows)]
        for c in range(n):
            p = next(i for i in range(c, n) if A[i][c] != 0)
            A[c], A[p] = A[p], A[c]
            pv = A[c][c]
            A[c] = [x / pv for x in A[c]]
            for i in range(n):
                if i != c and A[i][c] != 0:
                    f = A[i][c]
                    A[i] = [a - f * b for a, b in zip(A[i], A[c])]
        out = []
        for r in A:
            row = []
            for x in r[n:]:
                y = x * d
                assert y.denominator == 1
                row.append(int(y))
            out.append(row)
        return IntMat(out, n)
    rows = M.rows
    return IntMat([[(-1) ** (i + j) * det(_minor(rows, j, i)) for j in range(n)]
                   for i in range(n)], n)


def valuation_int(x, p):
    if x == 0:
        return inf
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def valuation(M, p):
    """Minimal p-adic valuation of the entries; ``math.inf`` for the zero matrix."""
    return min((valuation_int(x, p) for r in M.rows for x in r), default=inf)


def snf_with_transform(M):
    """Smith form with transforms: returns ``(D, U, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal (rectangular) with nonnegative entries ``d1 | d2 | ...``;
    ``U`` and ``V`` are unimodular.
    """
    m, n = M.nrows, M.ncols
    A = _as_lists(M)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, f):  # row dst -= f * row src
        A[dst] = [a - f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col dst -= f * col src
        for r in A:
            r[dst] -= f * r[src]
        for r in V:
            r[dst] -= f * r[src]

    for s in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(s, m) for j in range(s, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(s, i)
        swap_cols(s, j)
        while True:
            changed = False
            for i in range(s + 1, m):
                if A[i][s]:
                    add_row(i, s, A[i][s] // A[s][s])
                    if A[i][s]:
                        swap_rows(s, i)
                        changed = True
            for j in range(s + 1, n):
                if A[s][j]:
                    add_col(j, s, A[s][j] // A[s][s])
                    if A[s][j]:
                        swap_cols(s, j)
                        changed = True
            if changed:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n)
                        if A[i][j] % A[s][s]), None)
            if bad is None:
                break
            add_row(s, bad[0], -1)
        if A[s][s] < 0:
            A[s] = [-a for a in A[s]]
            U[s] = [-a for a in U[s]]
    return IntMat(A, n), IntMat(U, m), IntMat(V, n)


def snf(M):
    """Invariant factors (including zeros) of ``M`` as a tuple ``d1 | d2 | ...``."""
    D, _, _ = snf_with_transform(M)
    return tuple(D[i, i] for i in range(min(M.nrows, M.ncols)))


def kernel_int(M):
    """Saturated basis (as rows) of ``{x in Z^m : x @ M == 0}``."""
    m = M.nrows
    if m == 0:
        return IntMat((), 0)
    E, U, pivots = echelon(M)
    basis = [U.rows[i] for i in range(len(pivots), m)]
    K = IntMat(basis, m) if basis else IntMat((), m)
    return hnf(K) if basis else K


def saturate(rows):
    """Basis of the smallest direct summand of ``Z^n`` containing the row span."""
    n = rows.ncols
    if rows.nrows == 0 or rows.is_zero():
        return IntMat((), n)
    # right kernel Y of rows; the saturation is the left kernel of Y^T
    Y = kernel_int(rows.T())
    if Y.nrows == 0:
        return identity(n)
    return kernel_int(Y.T())


def row_span_contains(B, v):
    """Membership of the integer vector ``v`` in the row span of ``B``."""
    H = hnf(B) if B.nrows else B
    v = list(v)
    r = 0
    for c in range(len(v)):
        if r < H.nrows and H[r, c] and all(H[r, j] == 0 for j in range(c)):
            f, rem = divmod(v[c], H[r, c])
            if rem:
                return False
            v = [a - f * b for a, b in zip(v, H.rows[r])]
            r += 1
        elif v[c]:
            return False
    return not any(v)


def solve_rational(B, v):
    """Rational coefficients ``x`` with ``x @ B == v`` or ``None``; ``B`` has independent rows."""
    m, n = B.nrows, B.ncols
    # solve B^T x^T = v^T by Gauss-Jordan on the augmented matrix
    A = [[Fraction(B[j, i]) for j in range(m)] + [Fraction(v[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    if any(A[i][m] != 0 for i in range(r, n)):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        x[c] = A[i][m]
    return x


def is_unimodular(M):
    return M.nrows == M.ncols and abs(det(M)) == 1


def inverse_unimodular(M):
    d = det(M)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    return adjugate(M) * d


def complete_basis(A):
    """Rows completing the primitive row set ``A`` (k x n) to a unimodular n x n matrix."""
    k, n = A.nrows, A.ncols
    if k == 0:
        return identity(n)
    D, U, V = snf_with_transform(A)
    if any(D[i, i] != 1 for i in range(k)):
        raise ValueError("rows do not span a direct summand")
    Vinv = inverse_unimodular(V)
    return IntMat(Vinv.rows[k:], n)
