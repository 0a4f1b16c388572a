"""Directed G-graphs, their flag complexes and Bux's Morse-theoretic criterion."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .chains import GPoset
from .complex import SimplicialComplex


@dataclass(frozen=True)
class DirectedGGraph:
    n: int
    edges: frozenset[tuple[int, int]]
    action: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for row in self.action:
            for (a, b) in self.edges:
                if (row[a], row[b]) not in self.edges:
                    raise ValueError("group does not act by directed-graph automorphisms")
        if not self.well_founded():
            raise ValueError("graph is not well-founded (directed cycle)")

    @classmethod
    def from_gposet(cls, gp: GPoset) -> "DirectedGGraph":
        """Edge L -> K iff K < L: minimal vertices are the minimal poset elements."""
        edges = frozenset((i, j) for i in range(gp.n) for j in range(gp.n) if gp.less[j][i])
        return cls(gp.n, edges, gp.action, gp.labels)

    def well_founded(self) -> bool:
        # finite graph: well-founded iff acyclic
        state = [0] * self.n
        succ = self.successors

        def visit(v):
            state[v] = 1
            for w in succ[v]:
                if state[w] == 1 or (state[w] == 0 and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(state[v] == 2 or visit(v) for v in range(self.n))

    @cached_property
    def successors(self) -> list[list[int]]:
        out = [[] for _ in range(self.n)]
        for a, b in sorted(self.edges):
            out[a].append(b)
        return out

    def adjacent(self, a: int, b: int) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    @cached_property
    def minimal_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.successors[v]]

    @cached_property
    def flag_simplices(self) -> list[tuple[int, ...]]:
        out = []

        def extend(s):
            out.append(s)
            for v in range(s[-1] + 1, self.n):
                if all(self.adjacent(u, v) for u in s):
                    extend(s + (v,))

        for v in range(self.n):
            extend((v,))
        return sorted(out, key=lambda s: (len(s), s))

    def flag_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.labels or tuple(range(self.n)), frozenset(self.flag_simplices))

    def descending(self, simplex: tuple[int, ...]) -> list[int]:
        """Vertices of Gamma_down^sigma: endpoints of edges from every vertex of sigma."""
        return [y for y in range(self.n) if all((x, y) in self.edges for x in simplex)]

    def stabilizer(self, simplex: tuple[int, ...]) -> list[int]:
        s = set(simplex)
        return [g for g, row in enumerate(self.action) if {row[v] for v in s} == s]


@dataclass
class BuxReport:
    transitive_on_minimal: bool
    minimal_vertices: list[int]
    simplices_checked: int
    failures: list[dict]

    @property
    def passed(self) -> bool:
        return self.transitive_on_minimal and not self.failures

    def to_dict(self) -> dict:
        return {"passed": self.passed,
                "hypothesis_i_transitive_on_minimal": self.transitive_on_minimal,
                "minimal_vertices": self.minimal_vertices,
                "non_minimal_simplices_checked": self.simplices_checked,
                "hypothesis_ii_failures": self.failures}


def _transitive(action, group: list[int], points: list[int]) -> bool:
    if not points:
        return True
    orbit = {action[g][points[0]] for g in group}
    return set(points) <= orbit


def bux_check(graph: DirectedGGraph) -> BuxReport:
    group = list(range(len(graph.action)))
    mins = graph.minimal_vertices
    ok_i = _transitive(graph.action, group, mins)
    failures = []
    checked = 0
    min_set = set(mins)
    for s in graph.flag_simplices:
        if min_set & set(s):
            continue
        checked += 1
        down = graph.descending(s)
        down_set = set(down)
        down_min = [y for y in down if not any(z in down_set for z in graph.successors[y])]
        stab = graph.stabilizer(s)
        if not _transitive(graph.action, stab, down_min):
            failures.append({"simplex": list(s), "minimal_below": down_min,
                             "stabilizer_order": len(stab)})
    if not ok_i:
        failures_i = {"minimal_vertices": mins}
        return BuxReport(False, mins, checked, failures + [{"hypothesis": "i", **failures_i}])
    return BuxReport(True, mins, checked, failures)
