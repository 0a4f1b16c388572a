"""Phi-cuspidal pairs, their W-action, and relative Weyl groups of chains."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..chars import FiniteGroup
from ..levi import LeviPoset, levi_defect
from .dataset import CuspidalDataset, DatasetError


class PrincipalModeError(ValueError):
    pass


@dataclass(frozen=True)
class CuspidalPair:
    """A W-class of Phi-cuspidal pairs, stored at the least node of its Levi orbit."""

    levi: int
    label: str
    defect_shift: int
    native: bool = True


Instance = tuple[int, str]   # (node j, label) meaning t_j . (base, label)


class PairSystem:
    """All Phi-cuspidal pairs (node, label) with the W-action transported from base nodes."""

    def __init__(self, poset: LeviPoset, pairs: Sequence[CuspidalPair],
                 generators: dict[tuple[int, str], tuple[tuple[int, str], ...]] | None = None):
        self.poset = poset
        self.coset = poset.coset
        self.pairs = tuple(pairs)
        self.by_base: dict[int, list[CuspidalPair]] = {}
        for p in self.pairs:
            if p.levi != poset.orbits[poset.orbit_of(p.levi)][0]:
                raise ValueError("pairs must be stored at the least node of their orbit")
            self.by_base.setdefault(p.levi, []).append(p)
        self.transporter: dict[int, int] = {}
        for b in self.by_base:
            for u in range(self.coset.order):
                self.transporter.setdefault(poset.action[u][b], u)
        self._perm: dict[int, dict[int, dict[str, str]]] = {}
        for b, plist in self.by_base.items():
            self._perm[b] = self._label_action(b, [p.label for p in plist], generators or {})

    def _label_action(self, b: int, labels: list[str], generators) -> dict[int, dict[str, str]]:
        coset = self.coset
        normalizer = self.poset.normalizer(b)
        ident = {lab: lab for lab in labels}
        gens: dict[int, dict[str, str]] = {}
        for lab in labels:
            for w, image in generators.get((b, lab), ()):
                if w not in normalizer:
                    raise DatasetError("action generator does not normalise the Levi")
                if image not in ident:
                    raise DatasetError(f"action image {image!r} is not a label of this Levi class")
                gens.setdefault(w, dict(ident))[lab] = image
        if not gens:
            return {u: ident for u in normalizer}
        for w, perm in gens.items():
            if sorted(perm.values()) != sorted(labels):
                raise DatasetError("declared label action is not a permutation")
        for p in self.poset.nodes[b].parabolic:
            gens.setdefault(p, dict(ident))
            if gens[p] != ident:
                raise DatasetError("W_L must act trivially on labels")
        table = {coset.identity: ident}
        frontier = [coset.identity]
        while frontier:
            new = []
            for x in frontier:
                for s, ps in gens.items():
                    y = coset.mul(x, s)
                    py = {lab: table[x][ps[lab]] for lab in labels}
                    if y in table:
                        if table[y] != py:
                            raise DatasetError("inconsistent label action")
                    else:
                        table[y] = py
                        new.append(y)
            frontier = new
        if set(table) != set(normalizer):
            raise DatasetError("declared generators and W_L do not generate N_W(L)")
        return table

    def base_of(self, j: int) -> int:
        return self.poset.orbits[self.poset.orbit_of(j)][0]

    def pair_at(self, j: int, label: str) -> CuspidalPair:
        return next(p for p in self.by_base[self.base_of(j)] if p.label == label)

    def act(self, g: int, inst: Instance) -> Instance:
        j, lab = inst
        coset = self.coset
        j2 = self.poset.action[g][j]
        b = self.base_of(j)
        n = coset.mul(coset.inv(self.transporter[j2]), coset.mul(g, self.transporter[j]))
        return j2, self._perm[b][n][lab]

    def instances_below(self, m: int) -> list[Instance]:
        out = []
        for b, plist in sorted(self.by_base.items()):
            for j in self.poset.orbits[self.poset.orbit_of(b)]:
                if self.poset.leq(j, m):
                    out.extend((j, p.label) for p in plist)
        return sorted(out)

    def classes(self, instances: Sequence[Instance], group: Sequence[int]) -> list[tuple[Instance, ...]]:
        """Orbits of a subgroup on a set of instances, each sorted, ordered by least member."""
        left = set(instances)
        out = []
        for inst in sorted(instances):
            if inst not in left:
                continue
            orb = tuple(sorted({self.act(g, inst) for g in group}))
            if not set(orb) <= set(instances):
                raise RuntimeError("instance set is not stable under the group")
            left -= set(orb)
            out.append(orb)
        return out

    def stabilizer(self, inst: Instance, group: Sequence[int]) -> tuple[int, ...]:
        return tuple(g for g in group if self.act(g, inst) == inst)


def principal_pairs(poset: LeviPoset, toric_only: bool = False) -> list[CuspidalPair]:
    """(L_min, 1): every unipotent character of a minimal e-split Levi is e-cuspidal."""
    base = poset.orbits[poset.orbit_of(poset.minimal[0])][0]
    if toric_only and not poset.nodes[base].is_toric:
        raise PrincipalModeError("non-toric minimal Levi: dataset required")
    return [CuspidalPair(base, "1", levi_defect(poset, base), True)]


def dataset_pairs(poset: LeviPoset, ds: CuspidalDataset
                  ) -> tuple[list[CuspidalPair], dict[tuple[int, str], tuple[tuple[int, str], ...]]]:
    pairs, gens = [], {}
    for rec in ds.records:
        base = poset.orbits[rec.orbit][0]
        pairs.append(CuspidalPair(base, rec.label, rec.defect_shift, False))
        if rec.generators:
            gens[(base, rec.label)] = rec.generators
    return pairs, gens


def cuspidal_pairs(system: PairSystem, m: int, group: Sequence[int] | None = None
                   ) -> list[tuple[Instance, ...]]:
    """Classes of cuspidal pairs of the Levi m, under W_m by default."""
    if group is None:
        group = system.poset.nodes[m].parabolic
    return system.classes(system.instances_below(m), group)


def chain_stabilizer(poset: LeviPoset, chain: Sequence[int]) -> tuple[int, ...]:
    """N_W(sigma): the intersection of the normalisers of the terms."""
    return tuple(u for u in range(poset.coset.order) if all(poset.action[u][k] == k for k in chain))


@dataclass(frozen=True)
class RelativeWeylGroup:
    subgroup: tuple[int, ...]      # (N_W(L) & N_W(sigma))_lambda as W element indices
    kernel: tuple[int, ...]        # W_L
    quotient: FiniteGroup

    @property
    def order(self) -> int:
        return self.quotient.order


def relative_weyl_group(system: PairSystem, inst: Instance, sigma: Sequence[int] | None = None
                        ) -> RelativeWeylGroup:
    """W_G(sigma, (L, lambda)) = (N_W(L) & N_W(sigma))_lambda / W_L as an explicit quotient.

    ``sigma`` is listed smallest term first, so sigma[0] is L(sigma).
    """
    poset, coset = system.poset, system.coset
    j, _ = inst
    group = poset.normalizer(j)
    if sigma is not None:
        if not poset.leq(j, sigma[0]):
            raise ValueError("L is not below the minimal term of sigma")
        chain_stab = set(chain_stabilizer(poset, sigma))
        group = tuple(u for u in group if u in chain_stab)
    stab = system.stabilizer(inst, group)
    kernel = poset.nodes[j].parabolic
    kset = set(kernel)
    if not kset <= set(stab):
        raise RuntimeError("W_L is not contained in the relative stabiliser")
    cosets: dict[frozenset, int] = {}
    reps = []
    for s in stab:
        c = frozenset(coset.mul(s, k) for k in kernel)
        if c not in cosets:
            cosets[c] = len(reps)
            reps.append(s)
    lookup = {x: cosets[c] for c in cosets for x in c}
    table = tuple(tuple(lookup[coset.mul(a, b)] for b in reps) for a in reps)
    return RelativeWeylGroup(tuple(stab), tuple(kernel), FiniteGroup(table))
