"""Lie lattices, nilpotent algebras of endomorphisms and their centralizer data.

An :class:`EndoSetup` is a free lattice ``Z^n`` together with integer
matrices ``C_1, ..., C_d`` generating a nilpotent associative algebra that
acts on row vectors from the right.  Ideal counting for a Lie lattice uses
the adjoint maps; row ``i`` of ``ad(x)`` holds the coordinates of
``[e_i, x]``.
"""

from dataclasses import dataclass, field, replace
from .intlinalg import (IntMat, complete_basis, det, hnf, identity,
                        inverse_unimodular, kernel_int, rank, snf, solve_rational)

__all__ = [
    "AlgebraError", "GradingError", "LieLattice", "EndoSetup", "CentralData",
    "Violation", "adjoint_generators", "centralizer_series", "cocentral_basis",
    "change_basis", "check_condition", "witt_ranks", "mobius",
]


class AlgebraError(ValueError):
    """Invalid algebra input (bad structure constants, non-nilpotent action, ...)."""


class GradingError(AlgebraError):
    """A grading that does not refine the centralizer series."""


class LieLattice:
    """Structure constants ``[e_i, e_j] = sum_k lam[i][j][k] e_k`` over Z.

    ``brackets`` maps pairs ``(i, j)`` (0-based) to ``{k: coeff}``; the
    antisymmetric partner entries are filled in.  Antisymmetry and the
    Jacobi identity are checked on construction.
    """

    def __init__(self, n, brackets, labels=None):
        self.n = n
        self.labels = tuple(labels) if labels else tuple(f"e{i + 1}" for i in range(n))
        if len(self.labels) != n:
            raise AlgebraError("wrong number of basis labels")
        lam = [[[0] * n for _ in range(n)] for _ in range(n)]
        seen = set()
        for (i, j), vec in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraError(f"bracket index out of range: {(i, j)}")
            items = vec.items() if isinstance(vec, dict) else vec
            v = [0] * n
            for k, c in items:
                if not 0 <= k < n:
                    raise AlgebraError(f"bracket target out of range: {k}")
                v[k] += int(c)
            for a, b, w in ((i, j, v), (j, i, [-x for x in v])):
                if (a, b) in seen and lam[a][b] != w:
                    raise AlgebraError(f"brackets violate antisymmetry at {(i, j)}")
                lam[a][b] = w
                seen.add((a, b))
        for i in range(n):
            if any(lam[i][i]):
                raise AlgebraError(f"[e{i + 1}, e{i + 1}] must vanish")
        self.lam = lam
        self._check_jacobi()

    def bracket(self, u, v):
        n = self.n
        out = [0] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    row = self.lam[i][j]
                    for k in range(n):
                        if row[k]:
                            out[k] += a * b * row[k]
        return out

    def basis_vector(self, i):
        return [int(i == j) for j in range(self.n)]

    def _check_jacobi(self):
        n = self.n
        e = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                eij = self.lam[i][j]
                for k in range(j + 1, n):
                    s = [a + b + c for a, b, c in zip(
                        self.bracket(eij, e[k]),
                        self.bracket(self.lam[j][k], e[i]),
                        self.bracket(self.lam[k][i], e[j]))]
                    if any(s):
                        raise AlgebraError(
                            f"Jacobi identity fails for ({self.labels[i]}, "
                            f"{self.labels[j]}, {self.labels[k]})")

    def ad(self, x):
        """Matrix of ``y -> [y, x]`` acting on row vectors."""
        if isinstance(x, int):
            x = self.basis_vector(x)
        return IntMat([self.bracket(self.basis_vector(i), x) for i in range(self.n)], self.n)

    def permuted(self, order):
        """The same Lie lattice on the reordered basis ``order`` (old indices)."""
        pos = {old: new for new, old in enumerate(order)}
        brackets = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                v = self.lam[i][j]
                if any(v):
                    brackets[(pos[i], pos[j])] = {pos[k]: c for k, c in enumerate(v) if c}
        return LieLattice(self.n, brackets, [self.labels[o] for o in order])

    def nonzero_brackets(self):
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                v = self.lam[i][j]
                if any(v):
                    out.append((i, j, [(k, c) for k, c in enumerate(v) if c]))
        return out


@dataclass(frozen=True)
class EndoSetup:
    """A rank-``n`` lattice with generator matrices and an optional grading."""

    rank: int
    generators: tuple
    grading: tuple = None
    name: str = "user"
    lie: LieLattice = field(default=None, compare=False, repr=False)
    labels: tuple = None
    notes: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        n = self.rank
        if n < 1:
            raise AlgebraError("rank must be positive")
        for C in gens:
            if C.shape != (n, n):
                raise AlgebraError(f"generator of shape {C.shape}, expected {(n, n)}")
        if self.grading is not None:
            g = tuple(int(x) for x in self.grading)
            if any(x < 1 for x in g) or sum(g) != n:
                raise GradingError(f"grading {g} does not partition rank {n}")
            object.__setattr__(self, "grading", g)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(n)))
        if not _is_nilpotent(n, gens):
            raise AlgebraError("generated associative algebra is not nilpotent")

    @property
    def d(self):
        return len(self.generators)

    def strictly_upper(self):
        return all(C[r, s] == 0 for C in self.generators
                   for r in range(self.rank) for s in range(r + 1))


def _is_nilpotent(n, gens):
    # images V, V E, V E^2, ... of the full lattice must reach 0 within n steps
    V = identity(n)
    for _ in range(n):
        if not gens:
            return True
        stacked = [row for C in gens for row in (V @ C).rows]
        V = hnf(IntMat(stacked, n))
        if V.nrows == 0:
            return True
    return V.nrows == 0


def adjoint_generators(L, name="lie", grading=None):
    """All ``n`` adjoint matrices ``ad(e_1), ..., ad(e_n)``."""
    return EndoSetup(L.n, tuple(L.ad(i) for i in range(L.n)), grading, name, L, L.labels)


@dataclass(frozen=True)
class CentralData:
    """Saturated bases of ``0 = Z_0 < Z_1 < ... < Z_c = L`` and coranks ``N_i``."""

    Z: tuple
    N: tuple
    c: int

    @property
    def ranks(self):
        return tuple(z.nrows for z in self.Z)


def centralizer_series(E):
    n = E.rank
    Z = [IntMat((), n)]
    while Z[-1].nrows < n:
        cur = Z[-1]
        # columns spanning the annihilator of Z_i (Z_i saturated => Z_i = its left kernel)
        A = identity(n) if cur.nrows == 0 else kernel_int(cur.T()).T()
        blocks = [C @ A for C in E.generators]
        cols = sum(b.ncols for b in blocks)
        big = IntMat([sum((b.rows[i] for b in blocks), ()) for i in range(n)], cols)
        nxt = kernel_int(big) if cols else identity(n)
        if nxt.nrows <= cur.nrows:
            raise AlgebraError("centralizer series stabilizes below the lattice")
        Z.append(nxt)
    c = len(Z) - 1
    N = tuple(n - z.nrows for z in Z)
    return CentralData(tuple(Z), N, c)


def _tail_span(n, k):
    """Rows spanning the last ``k`` coordinate vectors."""
    return IntMat([[int(j == i) for j in range(n)] for i in range(n - k, n)], n)


def _same_span(A, B):
    if A.nrows == 0 or B.nrows == 0:
        return A.nrows == B.nrows == 0 or (hnf(A).nrows == 0 and hnf(B).nrows == 0)
    return hnf(A) == hnf(B)


def _is_primitive(rows, n):
    if not rows:
        return True
    d = snf(IntMat(rows, n))
    return all(x == 1 for x in d[:len(rows)])


def _extend(S, target, n):
    """Extend the primitive rows ``S`` (inside ``target``) to a basis of ``target``."""
    S = list(S)
    goal = target.nrows
    candidates = [tuple(int(i == j) for j in range(n)) for i in range(n)] + list(target.rows)
    for v in candidates:
        if len(S) == goal:
            break
        if solve_rational(target, v) is None:
            continue
        x = solve_rational(target, v)
        if any(c.denominator != 1 for c in x):
            continue
        trial = S + [v]
        if rank(IntMat(trial, n)) == len(trial) and _is_primitive(trial, n):
            S = trial
    if len(S) < goal:
        # coordinates of S in the target basis, completed to a unimodular matrix
        coords = [[int(c) for c in solve_rational(target, v)] for v in S]
        rest = complete_basis(IntMat(coords, goal) if coords else IntMat((), goal))
        S = S + list((rest @ target).rows)
    return S


def cocentral_basis(E, central=None):
    """Unimodular ``U`` (rows = new basis in old coordinates) making the basis cocentral.

    In the new basis each ``Z_i`` is spanned by the last ``n - N_i`` vectors.
    """
    cd = central or centralizer_series(E)
    n = E.rank
    if all(_same_span(z, _tail_span(n, z.nrows)) for z in cd.Z):
        return identity(n)
    layers = []
    S = []
    for z in cd.Z[1:]:
        new = _extend(S, z, n)
        layers.append(new[len(S):])
        S = new
    rows = [v for layer in reversed(layers) for v in layer]
    U = IntMat(rows, n)
    assert abs(det(U)) == 1
    return U


def change_basis(E, U):
    """Rewrite ``E`` in the basis given by the rows of the unimodular ``U``."""
    Uinv = inverse_unimodular(U)
    gens = tuple(U @ C @ Uinv for C in E.generators)
    return replace(E, generators=gens)


@dataclass(frozen=True)
class Violation:
    """First generator entry that breaks the block-superdiagonal shape (1-based)."""

    generator: int
    block: tuple
    entry: tuple
    value: int

    def to_json(self):
        return {"generator": self.generator, "block": list(self.block),
                "entry": list(self.entry), "value": self.value}

    def __str__(self):
        return (f"generator {self.generator}: entry {self.entry} = {self.value} "
                f"lies in block {self.block}")


def block_index(grading):
    out = []
    for b, size in enumerate(grading):
        out.extend([b] * size)
    return out


def check_grading(E, central=None):
    """Raise :class:`GradingError` unless ``Z_i`` is the sum of the last ``i`` blocks."""
    if E.grading is None:
        raise GradingError("no grading attached")
    cd = central or centralizer_series(E)
    g = E.grading
    if len(g) != cd.c:
        raise GradingError(f"grading has {len(g)} blocks but the class is {cd.c}")
    n = E.rank
    for i, z in enumerate(cd.Z):
        k = sum(g[len(g) - i:]) if i else 0
        if z.nrows != k or not _same_span(z, _tail_span(n, k)):
            raise GradingError(f"Z_{i} is not spanned by the last {i} grading blocks")
    return cd


def check_condition(E, central=None):
    """Return ``None`` if every generator maps block ``i`` into block ``i+1``, else a Violation."""
    check_grading(E, central)
    blk = block_index(E.grading)
    n = E.rank
    for k, C in enumerate(E.generators, 1):
        for r in range(n):
            for s in range(n):
                v = C[r, s]
                if v and blk[s] != blk[r] + 1:
                    return Violation(k, (blk[r] + 1, blk[s] + 1), (r + 1, s + 1), v)
    return None


def block_coranks(grading):
    """``N_i = sum_{j <= c-i} n_j`` for ``i = 0..c``."""
    c = len(grading)
    return tuple(sum(grading[:c - i]) for i in range(c + 1))


def mobius(k):
    out, m, p = 1, k, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def _witt(j, d):
    total = sum(mobius(k) * d ** (j // k) for k in range(1, j + 1) if j % k == 0)
    assert total % j == 0
    return total // j


def witt_ranks(c, d):
    """Coranks ``N_0..N_c`` of the free class-``c`` nilpotent Lie ring on ``d`` generators."""
    if c < 1 or d < 1:
        raise ValueError("c and d must be positive")
    return tuple(sum(_witt(j, d) for j in range(1, c - i + 1)) for i in range(c + 1))


def setup_from_matrices(mats, grading=None, name="user", labels=None):
    mats = tuple(m if isinstance(m, IntMat) else IntMat(m) for m in mats)
    if not mats:
        raise AlgebraError("need at least one generator matrix")
    return EndoSetup(mats[0].nrows, mats, grading, name, None, labels)


_CATALOG_NAMES = ("heisenberg", "fil4", "g66", "l_lambda", "maximal_class", "grenham",
                  "m_f", "u_lambda", "free_nilpotent", "hall_basis", "abelian", "by_name")


def __getattr__(name):
    # the named constructors live in .catalog; expose them here as well
    if name in _CATALOG_NAMES:
        from . import catalog
        return getattr(catalog, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
