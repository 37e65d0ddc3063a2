"""Named nilpotent algebras: Heisenberg, Fil_4, g_{6,6}, free nilpotent Lie
rings on Hall bases, the amalgams L_lambda, M_f and u_lambda.

Every constructor returns an :class:`EndoSetup` in a cocentral basis with
its natural grading attached (the grading may still violate the
block-shift shape, e.g. for Fil_4).
"""

import re

from .algebras import AlgebraError, EndoSetup, LieLattice, witt_ranks
from .intlinalg import IntMat, solve_rational

__all__ = [
    "heisenberg", "fil4", "g66", "l_lambda", "maximal_class", "grenham",
    "m_f", "u_lambda", "free_nilpotent", "hall_basis", "abelian", "by_name",
    "CATALOG", "UnknownAlgebra", "HALL_LIMIT", "MalformedAlgebra", "setup_from_json",
    "load_algebra_file",
]

HALL_LIMIT = 30


class UnknownAlgebra(KeyError):
    pass


def _lie_setup(L, gens, grading, name, notes=()):
    mats = tuple(L.ad(g) for g in gens)
    mats = tuple(m for m in mats if not m.is_zero())
    return EndoSetup(L.n, mats, tuple(grading), name, L, L.labels, tuple(notes))


def heisenberg():
    L = LieLattice(3, {(0, 1): {2: 1}}, ["x", "y", "z"])
    return _lie_setup(L, [0, 1], (2, 1), "heisenberg")


def fil4():
    # basis (z, x1, x2, x3, x4)
    L = LieLattice(5, {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}, (1, 2): {4: 1}},
                   ["z", "x1", "x2", "x3", "x4"])
    note = ("the relations give upper central series of length 4 (computed class 4); "
            "Fil_4 is sometimes labelled class-3-nilpotent")
    return _lie_setup(L, [0, 1], (2, 1, 1, 1), "fil4", [note])


def g66():
    L = LieLattice(6, {(0, 1): {3: 1}, (0, 2): {4: 1}, (0, 3): {5: 1}, (1, 2): {5: 1}},
                   [f"x{i}" for i in range(1, 7)])
    return _lie_setup(L, [0, 1, 2], (2, 2, 2), "g66")


def abelian(n):
    return EndoSetup(n, (), (n,), f"abelian:{n}")


# -- L_lambda -------------------------------------------------------------

def _check_partition(lam):
    lam = tuple(int(x) for x in lam)
    if not lam or any(x < 1 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"invalid partition {lam}: parts must be positive and descending")
    return lam


def _near_rectangle(lam):
    c = lam[0]
    r1 = sum(1 for x in lam if x == c)
    rest = lam[r1:]
    if any(x != 1 for x in rest):
        return None
    if c == 1:
        return (1, len(lam), 0)
    return (c, r1, len(rest))


def l_lambda(lam):
    """``L_lambda = <x0, x_ij | [x0, x_ij] = x_{i,j+1}>`` on a level-ordered basis."""
    lam = _check_partition(lam)
    c = lam[0]
    # depth of x0 is 1, depth of x_ij is c - lam_i + j
    items = [((1, -1, 0), "x0")]
    for i, li in enumerate(lam, 1):
        for j in range(1, li + 1):
            items.append(((c - li + j, i, j), f"x{i},{j}"))
    items.sort()
    index = {key[1:]: pos for pos, (key, _) in enumerate(items)}
    labels = [lab for _, lab in items]
    brackets = {}
    x0 = index[(-1, 0)]
    for i, li in enumerate(lam, 1):
        for j in range(1, li):
            brackets[(x0, index[(i, j)])] = {index[(i, j + 1)]: 1}
    L = LieLattice(len(items), brackets, labels)
    levels = [key[0] for key, _ in items]
    grading = [levels.count(lv) for lv in range(1, c + 1)]
    gens = [x0] + [index[(i, 1)] for i in range(1, len(lam) + 1)]
    name = "L:" + ",".join(map(str, lam))
    notes = []
    if _near_rectangle(lam) is None:
        notes.append("not a near rectangle: the block-shift condition is not satisfiable")
    if c == 1:
        return EndoSetup(L.n, (), (L.n,), name, L, L.labels, tuple(notes))
    return _lie_setup(L, gens, grading, name, notes)


def maximal_class(c):
    E = l_lambda((c,))
    return E


def grenham(r):
    return l_lambda((2,) * r)


# -- matrix algebras ------------------------------------------------------

def _unit(n, a, b):
    return IntMat([[int(i == a and j == b) for j in range(n)] for i in range(n)], n)


def m_f(f):
    """``M_f``: block-upper-right generic block-diagonal matrices acting on ``o^{2n}``."""
    f = tuple(int(x) for x in f)
    if not f or any(x < 1 for x in f):
        raise ValueError(f"invalid block sizes {f}")
    n = sum(f)
    gens, off = [], 0
    for size in f:
        for a in range(off, off + size):
            for b in range(off, off + size):
                gens.append(_unit(2 * n, a, n + b))
        off += size
    name = "mf:" + ",".join(map(str, f))
    return EndoSetup(2 * n, tuple(gens), (n, n), name)


def u_lambda(lam):
    """Block-diagonal strictly upper triangular matrices, basis ordered by level."""
    lam = _check_partition(lam)
    c = lam[0]
    # position j (1-based) in a block of size m sits at level c - m + j
    items = []
    for i, m in enumerate(lam):
        for j in range(1, m + 1):
            items.append((c - m + j, i, j))
    items.sort()
    pos = {(i, j): k for k, (_, i, j) in enumerate(items)}
    n = len(items)
    gens = [_unit(n, pos[(i, j)], pos[(i, j + 1)])
            for i, m in enumerate(lam) for j in range(1, m)]
    levels = [lv for lv, _, _ in items]
    grading = tuple(levels.count(lv) for lv in range(1, c + 1))
    labels = tuple(f"e{i + 1},{j}" for _, i, j in items)
    name = "u:" + ",".join(map(str, lam))
    return EndoSetup(n, tuple(gens), grading, name, None, labels)


# -- free nilpotent Lie rings --------------------------------------------

def hall_basis(c, d):
    """Basic commutators of weight <= c on ``d`` generators.

    Returns a list of ``(weight, left, right)`` with ``left = right = None``
    for generators; ``left``/``right`` index earlier entries.  A bracket
    ``[u, v]`` is basic when ``u > v`` and, if ``u = [u1, u2]``, ``u2 <= v``.
    """
    H = [(1, None, None) for _ in range(d)]
    for w in range(2, c + 1):
        new = []
        for a, (wa, la, ra) in enumerate(H):
            for b, (wb, _, _) in enumerate(H):
                if wa + wb != w or not a > b:
                    continue
                if la is not None and ra > b:
                    continue
                new.append((w, a, b))
        H.extend(new)
    return H


def _word_label(H, i):
    w, a, b = H[i]
    if a is None:
        return f"x{i + 1}"
    return f"[{_word_label(H, a)},{_word_label(H, b)}]"


def _assoc(H):
    """Expansion of each basic commutator in the free associative algebra."""
    polys = []
    for i, (w, a, b) in enumerate(H):
        if a is None:
            polys.append({(i,): 1})
            continue
        out = {}
        for u, cu in polys[a].items():
            for v, cv in polys[b].items():
                out[u + v] = out.get(u + v, 0) + cu * cv
                out[v + u] = out.get(v + u, 0) - cu * cv
        polys.append({k: v for k, v in out.items() if v})
    return polys


def free_nilpotent(c, d):
    """``f_{c,d}`` on a Hall basis, graded by weight, generators ``ad(x_1..x_d)``."""
    if c < 1 or d < 1:
        raise ValueError("c and d must be positive")
    N = witt_ranks(c, d)
    if N[0] > HALL_LIMIT:
        raise ValueError(f"f_{{{c},{d}}} has rank {N[0]} > {HALL_LIMIT}")
    H = hall_basis(c, d)
    n = len(H)
    assert n == N[0]
    polys = _assoc(H)
    by_weight = {}
    for i, (w, _, _) in enumerate(H):
        by_weight.setdefault(w, []).append(i)
    words = {w: sorted({u for i in idx for u in polys[i]}) for w, idx in by_weight.items()}
    mats = {}
    for w, idx in by_weight.items():
        cols = {u: k for k, u in enumerate(words[w])}
        mats[w] = (IntMat([[polys[i].get(u, 0) for u in words[w]] for i in idx], len(cols)), cols)
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = H[i][0] + H[j][0]
            if w > c:
                continue
            prod = {}
            for u, cu in polys[i].items():
                for v, cv in polys[j].items():
                    prod[u + v] = prod.get(u + v, 0) + cu * cv
                    prod[v + u] = prod.get(v + u, 0) - cu * cv
            prod = {k: v for k, v in prod.items() if v}
            if not prod:
                continue
            B, cols = mats[w]
            vec = [0] * B.ncols
            for u, cu in prod.items():
                vec[cols[u]] = cu
            x = solve_rational(B, vec)
            if x is None or any(v.denominator != 1 for v in x):
                raise AlgebraError("bracket is not an integral combination of basic commutators")
            brackets[(i, j)] = {by_weight[w][k]: int(v) for k, v in enumerate(x) if v}
    labels = [_word_label(H, i) for i in range(n)]
    L = LieLattice(n, brackets, labels)
    grading = [len(by_weight[w]) for w in range(1, c + 1)]
    name = f"free:{c},{d}"
    if c == 1:
        return EndoSetup(n, (), (n,), name, L, L.labels)
    return _lie_setup(L, range(d), grading, name)


# -- lookup ---------------------------------------------------------------

CATALOG = [
    "heisenberg", "fil4", "g66", "abelian:2", "abelian:3", "M:3", "M:4", "M:5",
    "L:2", "L:3,3", "L:2,1", "L:3,2", "grenham:2", "grenham:3",
    "mf:1", "mf:2", "mf:1,1", "u:3", "u:2,1", "free:2,2", "free:2,3", "free:3,2",
]

_PARAM = {
    "abelian": lambda a: abelian(a[0]),
    "M": lambda a: maximal_class(a[0]),
    "L": l_lambda,
    "grenham": lambda a: grenham(a[0]),
    "mf": m_f,
    "u": u_lambda,
    "free": lambda a: free_nilpotent(a[0], a[1]),
}

_PLAIN = {"heisenberg": heisenberg, "fil4": fil4, "g66": g66}


def by_name(name):
    """Resolve names like ``heisenberg``, ``M:4``, ``L:3,2``, ``free:3,2``."""
    name = name.strip()
    if name in _PLAIN:
        return _PLAIN[name]()
    m = re.fullmatch(r"([A-Za-z]+):([0-9]+(?:,[0-9]+)*)", name)
    if not m or m.group(1) not in _PARAM:
        raise UnknownAlgebra(name)
    args = tuple(int(x) for x in m.group(2).split(","))
    try:
        return _PARAM[m.group(1)](args)
    except IndexError:
        raise UnknownAlgebra(name) from None


# -- user files -------------------------------------------------------------

class MalformedAlgebra(ValueError):
    pass


def setup_from_json(data, name="user"):
    """Build an EndoSetup from the algebra file format (0-based indices).

    ``{"rank": n, "brackets": [[i, j, [[k, coeff], ...]], ...],
    "grading": [n_1, ...], "generators": "adjoint" | [matrix, ...]}``
    """
    from .algebras import adjoint_generators
    try:
        n = int(data["rank"])
        gens = data.get("generators", "adjoint")
        grading = data.get("grading")
        grading = tuple(grading) if grading is not None else None
        if gens == "adjoint":
            brackets = {}
            for i, j, terms in data.get("brackets", []):
                if (i, j) in brackets:
                    raise MalformedAlgebra(f"bracket ({i}, {j}) given twice")
                brackets[(i, j)] = [(k, c) for k, c in terms]
            L = LieLattice(n, brackets, data.get("labels"))
            E = adjoint_generators(L, name, grading)
            mats = tuple(C for C in E.generators if not C.is_zero())
            return EndoSetup(n, mats, grading, name, L, L.labels)
        mats = tuple(IntMat(m, n) for m in gens)
        return EndoSetup(n, mats, grading, name)
    except MalformedAlgebra:
        raise
    except (AlgebraError, KeyError, TypeError, ValueError) as exc:
        raise MalformedAlgebra(str(exc)) from exc


def load_algebra_file(path):
    import json
    from pathlib import Path
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedAlgebra(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedAlgebra(f"{path}: expected a JSON object")
    return setup_from_json(data, name=str(path))
