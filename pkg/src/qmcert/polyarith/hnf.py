"""Hermite normal form of integer lattices (column convention).

Columns of a matrix are lattice generators.  The normal form is upper
triangular; each pivot is positive and the entries to its right in the
pivot row lie in ``[0, pivot)``.  When the input has more columns than its
rank, the surplus columns come out as zero columns on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    rows: int
    cols: int

    def __init__(self, entries: Sequence[Sequence[int]], rows: int | None = None, cols: int | None = None):
        ent = tuple(tuple(int(x) for x in r) for r in entries)
        r = len(ent) if rows is None else rows
        c = (len(ent[0]) if ent else 0) if cols is None else cols
        if any(len(row) != c for row in ent) or len(ent) != r:
            raise ValueError("matrix is not rectangular")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "rows", r)
        object.__setattr__(self, "cols", c)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls([[col[i] for col in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(m: IntMatrix) -> IntMatrix:
    """Hermite normal form spanning the same lattice as the columns of m."""
    n, k = m.rows, m.cols
    cols = [list(c) for c in m.columns()]
    pivot_col = k
    out_pivots = []
    for i in range(n - 1, -1, -1):
        if pivot_col == 0:
            break
        piv = pivot_col - 1
        # gather the gcd of row i over columns [0, piv] into column piv
        for j in range(piv - 1, -1, -1):
            a, b = cols[piv][i], cols[j][i]
            if b == 0:
                continue
            d, u, v = _xgcd(a, b)
            ad, bd = a // d, b // d
            new_piv = [u * x + v * y for x, y in zip(cols[piv], cols[j])]
            cols[j] = [ad * y - bd * x for x, y in zip(cols[piv], cols[j])]
            cols[piv] = new_piv
        if cols[piv][i] == 0:
            continue
        if cols[piv][i] < 0:
            cols[piv] = [-x for x in cols[piv]]
        out_pivots.append((i, piv))
        pivot_col -= 1
    # reduce entries to the right of each pivot
    for i, piv in out_pivots:
        p = cols[piv][i]
        for j in range(piv + 1, k):
            q = cols[j][i] // p
            if q:
                cols[j] = [y - q * x for x, y in zip(cols[piv], cols[j])]
    return IntMatrix.from_columns(cols, n)


def hnf_mod(m: IntMatrix, modulus: int) -> IntMatrix:
    """Square HNF of a full-rank lattice containing ``modulus * Z^n``.

    Entries are reduced modulo ``modulus`` throughout, which keeps coefficient
    growth bounded; the result equals ``hnf`` up to the dropped zero columns.
    """
    n, k = m.rows, m.cols
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    R = modulus
    cols = [[x % R for x in c] for c in m.columns()] + [[0] * n for _ in range(n)]
    # appending R*e_i keeps the lattice unchanged because R*Z^n lies inside it
    for i in range(n):
        cols[k + i][i] = R
    k += n
    W = [[0] * n for _ in range(n)]
    active = k
    for i in range(n - 1, -1, -1):
        piv = active - 1
        for j in range(piv - 1, -1, -1):
            a, b = cols[piv][i], cols[j][i]
            if b == 0:
                continue
            d, u, v = _xgcd(a, b)
            ad, bd = a // d, b // d
            new_piv = [(u * x + v * y) % R for x, y in zip(cols[piv], cols[j])]
            cols[j] = [(ad * y - bd * x) % R for x, y in zip(cols[piv], cols[j])]
            cols[piv] = new_piv
        _, u, _ = _xgcd(cols[piv][i], R)
        w = [(u * x) % R for x in cols[piv]]
        if w[i] == 0:
            w[i] = R
        W[i] = w
        for j in range(i + 1, n):
            q = W[j][i] // w[i]
            if q:
                W[j] = [y - q * x for x, y in zip(w, W[j])]
        active -= 1
        cols = cols[:piv]
    return IntMatrix.from_columns(W, n)


def hnf_basis(m: IntMatrix) -> IntMatrix:
    """HNF with the leading zero columns removed."""
    h = hnf(m)
    keep = [c for c in h.columns() if any(c)]
    return IntMatrix.from_columns(keep, h.rows) if keep else IntMatrix([[]] * h.rows, h.rows, 0)


def reduce_mod_lattice(h: IntMatrix, v: Sequence[int]) -> list[int]:
    """Canonical representative of v modulo a square full-rank HNF lattice."""
    v = list(v)
    for i in range(h.rows - 1, -1, -1):
        p = h[i, i]
        q = v[i] // p
        if q:
            for r in range(i + 1):
                v[r] -= q * h[r, i]
    return v


def in_lattice(h: IntMatrix, v: Sequence[int]) -> bool:
    return not any(reduce_mod_lattice(h, v))


def solve_upper(h: IntMatrix, v: Sequence) -> list[Fraction]:
    """Coordinates c with h c = v for square upper-triangular h."""
    n = h.rows
    c = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(v[i]) - sum((h[i, j] * c[j] for j in range(i + 1, n)), Fraction(0))
        c[i] = s / h[i, i]
    return c


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]
