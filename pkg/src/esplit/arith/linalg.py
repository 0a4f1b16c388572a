"""Subspaces of Q(zeta_n)^d kept in reduced row echelon form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cyclotomic import Cyclotomic, as_cyclotomic

Vector = tuple[Cyclotomic, ...]


def to_field(rows: Sequence[Sequence], n: int) -> list[list[Cyclotomic]]:
    return [[as_cyclotomic(x, n) for x in row] for row in rows]


def rref(rows: Sequence[Sequence[Cyclotomic]], ncols: int) -> tuple[list[list[Cyclotomic]], list[int]]:
    """Reduced row echelon form; zero rows dropped.  Returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if not mat[i][col].is_zero()), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][col].is_zero():
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows: Sequence[Sequence[Cyclotomic]], ncols: int, n: int) -> list[list[Cyclotomic]]:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    zero = Cyclotomic.rational(0, n)
    one = Cyclotomic.rational(1, n)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class SubspaceCF:
    """A subspace of Q(zeta_n)^dim, stored by its unique RREF basis."""

    dim: int
    n: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Sequence[Sequence], dim: int, n: int = 1) -> "SubspaceCF":
        rows = to_field(vectors, n)
        for row in rows:
            if len(row) != dim:
                raise ValueError("dimension mismatch")
        red, _ = rref(rows, dim)
        return cls(dim, n, tuple(tuple(r) for r in red))

    @classmethod
    def whole(cls, dim: int, n: int = 1) -> "SubspaceCF":
        return cls.span([[int(i == j) for j in range(dim)] for i in range(dim)], dim, n)

    @classmethod
    def zero(cls, dim: int, n: int = 1) -> "SubspaceCF":
        return cls(dim, n, ())

    @classmethod
    def kernel(cls, matrix: Sequence[Sequence], n: int = 1) -> "SubspaceCF":
        rows = to_field(matrix, n)
        dim = len(rows[0]) if rows else 0
        return cls.span(nullspace(rows, dim, n), dim, n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def lift(self, n: int) -> "SubspaceCF":
        if n == self.n:
            return self
        return SubspaceCF.span([[x.lift(n) for x in v] for v in self.basis], self.dim, n)

    def annihilator(self) -> list[list[Cyclotomic]]:
        if not self.basis:
            return [[Cyclotomic.rational(int(i == j), self.n) for j in range(self.dim)]
                    for i in range(self.dim)]
        return nullspace(self.basis, self.dim, self.n)

    def _check(self, other: "SubspaceCF") -> None:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.n != other.n:
            raise ValueError("conductor mismatch")

    def __and__(self, other: "SubspaceCF") -> "SubspaceCF":
        self._check(other)
        eqs = self.annihilator() + other.annihilator()
        if not eqs:
            return self
        return SubspaceCF.span(nullspace(eqs, self.dim, self.n), self.dim, self.n)

    def __add__(self, other: "SubspaceCF") -> "SubspaceCF":
        self._check(other)
        return SubspaceCF.span(list(self.basis) + list(other.basis), self.dim, self.n)

    def __le__(self, other: "SubspaceCF") -> bool:
        self._check(other)
        return (self + other) == other

    def contains(self, v: Sequence) -> bool:
        return SubspaceCF.span(list(self.basis) + [list(v)], self.dim, self.n) == self

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in v) + "]" for v in self.basis)
        return f"SubspaceCF(dim={self.dim}, n={self.n}, basis=[{rows}])"


def subspace_canonicalize(vectors: Sequence[Sequence], dim: int, n: int = 1) -> SubspaceCF:
    return SubspaceCF.span(vectors, dim, n)


def subspace_intersect(a: SubspaceCF, b: SubspaceCF) -> SubspaceCF:
    return a & b


def subspace_leq(a: SubspaceCF, b: SubspaceCF) -> bool:
    return a <= b


def apply_matrix(m: Sequence[Sequence[int]], v: Sequence[Cyclotomic]) -> list[Cyclotomic]:
    """Integer matrix acting on a column vector."""
    out = []
    for row in m:
        acc = None
        for a, x in zip(row, v):
            if a:
                term = x * a
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else v[0] * 0)
    return out
