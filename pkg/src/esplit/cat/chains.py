"""G-posets, W-orbits of chains and the orbit complex S(Delta(P))/G."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .complex import SimplicialComplex, all_chains, order_complex

Chain = tuple[int, ...]


@dataclass(frozen=True)
class GPoset:
    """A finite poset on 0..n-1 with a group acting by order automorphisms.

    ``action[g][i]`` is the image of element i under group element g; the
    group elements are indexed 0..|G|-1 and index 0 need not be the identity.
    """

    less: tuple[tuple[bool, ...], ...]
    action: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = len(self.less)
        for row in self.action:
            if sorted(row) != list(range(n)):
                raise ValueError("group element does not permute the poset")
            for i in range(n):
                for j in range(n):
                    if self.less[i][j] != self.less[row[i]][row[j]]:
                        raise ValueError("group does not act by order automorphisms")

    @property
    def n(self) -> int:
        return len(self.less)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    @classmethod
    def from_levi_poset(cls, poset) -> "GPoset":
        labels = tuple(_levi_label(poset, i) for i in range(len(poset)))
        return cls(tuple(map(tuple, poset.less)), tuple(map(tuple, poset.action)), labels)

    @cached_property
    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if not any(self.less[k][i] for k in range(self.n))]

    @cached_property
    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not any(self.less[i])]


def _levi_label(poset, i: int) -> str:
    L = poset.nodes[i]
    if i == poset.top:
        return "G"
    kind = "T" if L.is_toric else "L"
    return f"{kind}{i}[|P|={len(L.parabolic)},w={L.rep}]"


def load_poset_file(path: str | Path) -> GPoset:
    """JSON {"elements": n, "less": [[i, j], ...], "group": [[perm], ...]}.

    The relation is closed transitively; the group is generated by the given
    permutations (the trivial group when absent).
    """
    data = json.loads(Path(path).read_text())
    n = int(data["elements"])
    less = [[False] * n for _ in range(n)]
    for i, j in data.get("less", []):
        less[i][j] = True
    for k in range(n):
        for i in range(n):
            if less[i][k]:
                for j in range(n):
                    if less[k][j]:
                        less[i][j] = True
    if any(less[i][i] for i in range(n)):
        raise ValueError("relation has a cycle")
    gens = [tuple(p) for p in data.get("group", [])]
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[i]] for i in range(n))
                if h not in group:
                    group.add(h)
                    new.append(h)
        frontier = new
    labels = tuple(str(x) for x in data.get("labels", [])) or ()
    return GPoset(tuple(map(tuple, less)), tuple(sorted(group)), labels)


@dataclass(frozen=True)
class ChainOrbit:
    rep: Chain                   # lexicographically least chain in the orbit, smallest term first
    members: tuple[Chain, ...]
    stabilizer: tuple[int, ...]  # group element indices fixing rep

    @property
    def length(self) -> int:
        """|sigma| = number of terms minus one."""
        return len(self.rep) - 1

    @property
    def minimal_term(self) -> int:
        return self.rep[0]


def chain_orbits(gp: GPoset, mode: str = "all", top: int | None = None) -> list[ChainOrbit]:
    """W-orbits of strictly increasing chains.

    mode "all": every non-empty chain.  mode "star": chains whose largest term
    is ``top`` (the unique maximum by default), excluding the chain {top}.
    """
    if mode not in ("all", "star"):
        raise ValueError(f"unknown chain mode {mode!r}")
    chains = all_chains(gp.n, gp.less)
    if mode == "star":
        if top is None:
            if len(gp.maximal) != 1:
                raise ValueError("star mode needs a unique maximum")
            top = gp.maximal[0]
        chains = [c for c in chains if c[-1] == top and len(c) > 1]
    seen: set[Chain] = set()
    orbits = []
    for c in chains:
        if c in seen:
            continue
        members = sorted({_image(gp, g, c) for g in range(len(gp.action))})
        seen.update(members)
        rep = members[0]
        stab = tuple(g for g in range(len(gp.action)) if _image(gp, g, rep) == rep)
        orbits.append(ChainOrbit(rep, tuple(members), stab))
    return sorted(orbits, key=lambda o: (len(o.rep), o.rep))


def _image(gp: GPoset, g: int, chain: Chain) -> Chain:
    # the image of a chain is a chain; order its terms by the poset order
    terms = [gp.action[g][i] for i in chain]
    return tuple(sorted(terms, key=lambda i: sum(1 for t in terms if gp.less[t][i])))


@dataclass(frozen=True)
class OrbitPoset:
    """S(Delta(P))/G: chain orbits ordered by 'some translate is a subchain'."""

    orbits: tuple[ChainOrbit, ...]
    less: tuple[tuple[bool, ...], ...]

    def labels(self, gp: GPoset) -> list[str]:
        return ["{" + "<".join(gp.label(i) for i in o.rep) + "}" for o in self.orbits]


def orbit_poset(gp: GPoset) -> OrbitPoset:
    orbits = chain_orbits(gp, "all")
    where = {c: k for k, o in enumerate(orbits) for c in o.members}
    n = len(orbits)
    less = [[False] * n for _ in range(n)]
    for k, o in enumerate(orbits):
        for size in range(1, len(o.rep)):
            for sub in combinations(o.rep, size):
                less[where[sub]][k] = True
    return OrbitPoset(tuple(orbits), tuple(map(tuple, less)))


def orbit_complex(gp: GPoset) -> tuple[OrbitPoset, SimplicialComplex]:
    """The order complex of the chain-orbit poset, |.| of which is O_G(Delta(P))."""
    op = orbit_poset(gp)
    return op, order_complex(len(op.orbits), op.less, op.labels(gp))


def find_poset_isomorphism(less_a: Sequence[Sequence[bool]], less_b: Sequence[Sequence[bool]]
                           ) -> list[int] | None:
    """An order isomorphism a -> b as a list, or None, by backtracking."""
    n = len(less_a)
    if n != len(less_b):
        return None

    def invariant(less, i):
        down = sum(1 for k in range(n) if less[k][i])
        up = sum(1 for k in range(n) if less[i][k])
        return down, up

    inv_a = [invariant(less_a, i) for i in range(n)]
    inv_b = [invariant(less_b, i) for i in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return None
    order = sorted(range(n), key=lambda i: inv_a[i])
    image = [-1] * n
    used = [False] * n

    def ok(i, j):
        for k in range(n):
            if image[k] >= 0:
                if less_a[i][k] != less_b[j][image[k]] or less_a[k][i] != less_b[image[k]][j]:
                    return False
        return True

    def search(t):
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if not used[j] and inv_b[j] == inv_a[i] and ok(i, j):
                image[i], used[j] = j, True
                if search(t + 1):
                    return True
                image[i], used[j] = -1, False
        return False

    return image if search(0) else None
