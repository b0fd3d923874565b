"""Dense linear algebra over F_p."""

from __future__ import annotations

from typing import Sequence


def row_echelon(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[x % p for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                k = a[i][c]
                a[i] = [(x - k * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(row_echelon(rows, p)[1])


def kernel(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of {v : M v = 0} for M given by rows."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    ech, pivots = row_echelon(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(ech, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def left_kernel(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {u : u M = 0}, i.e. linear relations among the rows."""
    if not rows:
        return []
    t = [list(col) for col in zip(*rows)]
    return kernel(t, p, len(rows))
