"""Exact linear algebra over Z and Q on plain nested lists.

Matrices are lists of rows.  Entries are ints or Fractions; nothing here
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_integral(a):
    for row in a:
        for x in row:
            if Fraction(x).denominator != 1:
                return False
    return True


def det(a):
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    d = sign * m[n - 1][n - 1]
    return int(d) if d.denominator == 1 else d


def inverse(a):
    """Inverse over Q by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def solve(a, b):
    """Solve a x = b for square nonsingular a over Q."""
    return mat_vec(inverse(a), b)


def signature(g):
    """Return (n_plus, n_minus) of a symmetric rational matrix.

    Uses congruence diagonalisation, so the answer is exact.
    """
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    pos = neg = 0
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if a[i][i] != 0), None)
        if p is None:
            # all remaining diagonal entries vanish; make one nonzero
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                         if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            p = i
        a[k], a[p] = a[p], a[k]
        for row in a:
            row[k], row[p] = row[p], row[k]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for t in range(k, n):
                    a[i][t] -= f * a[k][t]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
        k += 1
    return pos, neg


def smith_normal_form(a):
    """Smith normal form of an integer matrix.

    Returns (s, u, v) with u * a * v == s, u and v unimodular, and the
    diagonal of s non-negative with each entry dividing the next.
    """
    m, n = len(a), len(a[0]) if a else 0
    s = [[int(x) for x in row] for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in s:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if s[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, m):
                q = s[i][t] // s[t][t]
                if q:
                    add_row(i, t, -q)
                if s[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = s[t][j] // s[t][t]
                if q:
                    add_col(j, t, -q)
                if s[t][j]:
                    done = False
            if not done:
                continue
            # enforce divisibility of the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if s[i][j] % s[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return s, u, v


def integer_kernel_index(vectors):
    """Index in Z^2 of the span of the given integer 2-vectors (0 if not full)."""
    g = 0
    for i in range(len(vectors)):
        a, b = vectors[i]
        for j in range(i + 1, len(vectors)):
            c, d = vectors[j]
            g = gcd(g, a * d - b * c)
            if g == 1:
                return 1
    return g
