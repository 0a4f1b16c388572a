"""Finite simplicial complexes, order complexes and reduced integral homology."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from ..arith import smith_normal_form

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices 0..n-1 and a face-closed set of simplices (sorted vertex tuples)."""

    vertices: tuple
    simplices: frozenset[Simplex]

    @classmethod
    def from_facets(cls, vertices: Sequence, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces: set[Simplex] = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            if not f or f in faces:
                continue
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
        for v in range(len(vertices)):
            faces.add((v,))
        return cls(tuple(vertices), frozenset(faces))

    def __post_init__(self):
        for s in self.simplices:
            if list(s) != sorted(set(s)):
                raise ValueError(f"simplex {s} is not a sorted vertex set")
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    if face not in self.simplices:
                        raise ValueError(f"face {face} of {s} missing")

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def faces_of_dim(self, k: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def f_vector(self) -> list[int]:
        return [len(self.faces_of_dim(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def to_dict(self) -> dict:
        return {"vertices": [str(v) for v in self.vertices],
                "simplices": [list(s) for s in sorted(self.simplices, key=lambda s: (len(s), s))]}


def order_complex(n: int, less: Sequence[Sequence[bool]], labels: Sequence | None = None) -> SimplicialComplex:
    """Delta(P): simplices are the non-empty chains of the poset on 0..n-1."""
    chains = all_chains(n, less)
    return SimplicialComplex(tuple(labels) if labels is not None else tuple(range(n)),
                             frozenset(tuple(sorted(c)) for c in chains))


def all_chains(n: int, less: Sequence[Sequence[bool]]) -> list[tuple[int, ...]]:
    """Non-empty strictly increasing chains, each listed from smallest to largest."""
    out: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...]):
        out.append(chain)
        top = chain[-1]
        for j in range(n):
            if less[top][j]:
                extend(chain + (j,))

    for i in range(n):
        extend((i,))
    return sorted(out, key=lambda c: (len(c), c))


def boundary_matrix(cx: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of d_k: C_k -> C_{k-1}; for k = 0 the augmentation to C_{-1} = Z."""
    rows = cx.faces_of_dim(k - 1) if k > 0 else [()]
    cols = cx.faces_of_dim(k)
    row_index = {s: i for i, s in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        if k == 0:
            m[0][j] = 1
            continue
        for i in range(len(s)):
            m[row_index[s[:i] + s[i + 1:]]][j] = (-1) ** i
    return m


@dataclass(frozen=True)
class HomologyReport:
    """Reduced integral homology: betti[k] and torsion[k] for k = -1 .. dim."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    @property
    def acyclic(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def degree(self, k: int) -> tuple[int, tuple[int, ...]]:
        return self.betti[k + 1], self.torsion[k + 1]

    def to_dict(self) -> dict:
        return {"reduced": [{"degree": k - 1, "betti": b, "torsion": list(t)}
                            for k, (b, t) in enumerate(zip(self.betti, self.torsion))],
                "acyclic": self.acyclic}


def homology(cx: SimplicialComplex) -> HomologyReport:
    """Reduced homology of the augmented chain complex via Smith normal form."""
    top = cx.dim
    counts = {k: len(cx.faces_of_dim(k)) for k in range(top + 1)}
    counts[-1] = 1
    ranks, invariants = {}, {}
    for k in range(0, top + 1):
        snf = smith_normal_form(boundary_matrix(cx, k))
        ranks[k], invariants[k] = snf.rank, snf.invariants
    ranks[top + 1], invariants[top + 1] = 0, ()
    betti, torsion = [], []
    for k in range(-1, top + 1):
        rk_out = ranks.get(k, 0)          # rank of d_k leaving C_k (d_{-1} = 0)
        rk_in = ranks[k + 1]
        betti.append(counts[k] - rk_out - rk_in)
        torsion.append(tuple(d for d in invariants[k + 1] if d > 1))
    return HomologyReport(tuple(betti), tuple(torsion))
