"""Compiled inner loops for HNF enumeration (numba), with a pure Python twin.

An HNF of determinant ``p^k`` with diagonal ``d = (p^{a_1}, ..., p^{a_n})``
has free entries ``M[i, j]`` (i < j) in ``[0, d[j])``.  These are run
through as an odometer whose least significant digits belong to row 0,
so rows are filled bottom-up.  In pruning mode a row is tested as soon
as everything below it is fixed; that is only sound when every generator
is strictly upper triangular (then ``row_i * C`` lives in the span of the
rows below ``i``).
"""

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True, nogil=True)
def _member(M, d, w, n):
    # back substitution against an upper triangular basis; destroys w
    for j in range(n):
        if w[j] != 0:
            if w[j] % d[j] != 0:
                return False
            x = w[j] // d[j]
            for l in range(j, n):
                w[l] -= x * M[j, l]
    return True


@njit(cache=True, nogil=True)
def _row_ok(M, d, gens, i, n, w):
    for g in range(gens.shape[0]):
        for col in range(n):
            s = 0
            for l in range(i, n):
                s += M[i, l] * gens[g, l, col]
            w[col] = s
        if not _member(M, d, w, n):
            return False
    return True


@njit(cache=True, nogil=True)
def count_composition_nb(d, gens, prune):
    n = d.shape[0]
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        M[i, i] = d[i]
    npos = 0
    for j in range(n):
        if d[j] > 1:
            npos += j
    pi = np.empty(npos, dtype=np.int64)
    pj = np.empty(npos, dtype=np.int64)
    rowstart = np.empty(n + 1, dtype=np.int64)
    x = 0
    for i in range(n):
        rowstart[i] = x
        for j in range(i + 1, n):
            if d[j] > 1:
                pi[x] = i
                pj[x] = j
                x += 1
    rowstart[n] = x
    w = np.empty(n, dtype=np.int64)
    total = 0
    top = n - 1
    while True:
        fail = -1
        if prune:
            for i in range(top, -1, -1):
                if not _row_ok(M, d, gens, i, n, w):
                    fail = i
                    break
        else:
            for i in range(n):
                if not _row_ok(M, d, gens, i, n, w):
                    fail = 0
                    break
        if fail < 0:
            total += 1
            start = 0
        else:
            start = rowstart[fail]
        for y in range(start):
            M[pi[y], pj[y]] = 0
        pos = start
        while pos < npos:
            M[pi[pos], pj[pos]] += 1
            if M[pi[pos], pj[pos]] < d[pj[pos]]:
                break
            M[pi[pos], pj[pos]] = 0
            pos += 1
        if pos >= npos:
            break
        top = pi[pos]
    return total


# -- pure Python twin (arbitrary precision) --------------------------------

def _member_py(M, d, w, n):
    for j in range(n):
        if w[j]:
            if w[j] % d[j]:
                return False
            x = w[j] // d[j]
            Mj = M[j]
            for l in range(j, n):
                w[l] -= x * Mj[l]
    return True


def _row_ok_py(M, d, gens, i, n):
    row = M[i]
    for C in gens:
        w = [sum(row[l] * C[l][col] for l in range(i, n)) for col in range(n)]
        if not _member_py(M, d, w, n):
            return False
    return True


def odometer_positions(d):
    n = len(d)
    pos = [(i, j) for i in range(n) for j in range(i + 1, n) if d[j] > 1]
    rowstart = []
    x = 0
    for i in range(n + 1):
        while x < len(pos) and pos[x][0] < i:
            x += 1
        rowstart.append(x)
    return pos, rowstart


def count_composition_py(d, gens, prune):
    n = len(d)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = d[i]
    pos, rowstart = odometer_positions(d)
    npos = len(pos)
    total, top = 0, n - 1
    while True:
        fail = -1
        if prune:
            for i in range(top, -1, -1):
                if not _row_ok_py(M, d, gens, i, n):
                    fail = i
                    break
        else:
            for i in range(n):
                if not _row_ok_py(M, d, gens, i, n):
                    fail = 0
                    break
        if fail < 0:
            total += 1
            start = 0
        else:
            start = rowstart[fail]
        for y in range(start):
            i, j = pos[y]
            M[i][j] = 0
        p = start
        while p < npos:
            i, j = pos[p]
            M[i][j] += 1
            if M[i][j] < d[j]:
                break
            M[i][j] = 0
            p += 1
        if p >= npos:
            break
        top = pos[p][0]
    return total
