"""Integral Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SmithForm:
    invariants: tuple[int, ...]     # nonzero diagonal entries, d1 | d2 | ...
    rank: int
    left: tuple[tuple[int, ...], ...] | None = None
    right: tuple[tuple[int, ...], ...] | None = None


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]], transforms: bool = False) -> SmithForm:
    """Smith normal form D = U M V with U, V unimodular.

    The input is not modified.  With ``transforms`` the unimodular U and V
    are returned as ``left`` and ``right``.
    """
    a = [list(map(int, row)) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    U = _identity(nrows) if transforms else None
    V = _identity(ncols) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        if U is not None:
            U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        if V is not None:
            for row in V:
                row[dst] += f * row[src]

    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q, r = divmod(a[i][t], p)
                    add_row(t, i, -q)
                    if r:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q, r = divmod(a[t][j], p)
                    add_col(t, j, -q)
                    if r:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived: re-pivot on it
                best = None
                for i in range(t, nrows):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t, ncols):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility: the pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1

    invariants = tuple(a[i][i] for i in range(min(nrows, ncols)) if a[i][i])
    return SmithForm(
        invariants=invariants,
        rank=len(invariants),
        left=tuple(map(tuple, U)) if U is not None else None,
        right=tuple(map(tuple, V)) if V is not None else None,
    )
