"""Exact integer/rational linear algebra: Bareiss elimination and Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _shape(A) -> tuple:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise ValueError("matrix is not rectangular")
    return rows, cols


def integer_rows(A: Sequence[Sequence]) -> list:
    """Scale each row by the lcm of its denominators; row space and kernel are unchanged."""
    out = []
    for row in A:
        row = [Fraction(x) for x in row]
        d = 1
        for x in row:
            d = lcm(d, x.denominator)
        out.append([int(x * d) for x in row])
    return out


def bareiss(A: Sequence[Sequence[int]]) -> tuple:
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(E, pivots)`` where ``E`` is the echelon matrix (rows beyond
    ``len(pivots)`` are zero) and ``pivots`` the pivot column indices.
    """
    M = [list(map(int, r)) for r in A]
    nrows, ncols = _shape(M)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        prow = M[r]
        for i in range(r + 1, nrows):
            row = M[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            elif piv != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (piv * row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots


def rat_rank(A: Sequence[Sequence]) -> int:
    if not A or not len(A[0]):
        return 0
    return len(bareiss(integer_rows(A))[1])


def rat_kernel(A: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of {v : A v = 0} as primitive integer vectors (tuples of Fraction)."""
    if not A:
        if ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    E, pivots = bareiss(integer_rows(A))
    ncols = len(E[0])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((E[r][j] * x[j] for j in range(pc + 1, ncols) if E[r][j]), Fraction(0))
            x[pc] = -s / E[r][pc]
        basis.append(_primitive(x))
    return basis


def _primitive(v: Sequence[Fraction]) -> tuple:
    d = 1
    for x in v:
        d = lcm(d, x.denominator)
    ints = [int(x * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    lead = next((x for x in ints if x), 1)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def mat_mul(A, B) -> list:
    n, k = _shape(A)
    k2, m = _shape(B)
    if k != k2:
        raise ValueError("shape mismatch")
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det(A) -> Fraction:
    """Exact determinant via Bareiss (last pivot of the fraction-free elimination)."""
    n, m = _shape(A)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in r] for r in A]
    scale = Fraction(1)
    ints = []
    for r in rows:
        d = 1
        for x in r:
            d = lcm(d, x.denominator)
        scale /= d
        ints.append([int(x * d) for x in r])
    # track row swaps to fix the sign
    M = [r[:] for r in ints]
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                M[i][j] = (M[c][c] * M[i][j] - M[i][c] * M[c][j]) // prev
            M[i][c] = 0
        prev = M[c][c]
    return sign * Fraction(M[n - 1][n - 1]) * scale


@dataclass(frozen=True)
class SNFDecomposition:
    """``S = U * A * V`` with ``U``, ``V`` unimodular and ``S`` diagonal with d1 | d2 | ..."""

    U: tuple
    S: tuple
    V: tuple

    @property
    def diagonal(self) -> tuple:
        k = min(len(self.S), len(self.S[0]) if self.S else 0)
        return tuple(self.S[i][i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple:
        return tuple(d for d in self.diagonal if d)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFDecomposition:
    """Smith normal form with transforms, by repeated gcd row/column operations."""
    S = [list(map(int, r)) for r in A]
    m, n = _shape(S)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        if k:
            for row in S:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        done = False
            if not done:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SNFDecomposition(
        tuple(map(tuple, U)), tuple(map(tuple, S)), tuple(map(tuple, V))
    )


def sparse_rank(rows: Sequence[dict]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{column: value}`` rows.

    Fraction-free echelon reduction on leading columns; each reduced row is
    divided by its content so entries stay small on the very sparse matrices
    produced by graded pieces.
    """
    pivots: dict = {}
    for row in rows:
        r = {c: int(v) for c, v in row.items() if v}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                if r[c] < 0:
                    g = -g
                pivots[c] = {k: v // g for k, v in r.items()}
                break
            a, b = p[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
            r = {k: v // g for k, v in new.items()} if g > 1 else new
    return len(pivots)
