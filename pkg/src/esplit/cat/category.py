"""Finite categories: transporter categories, subdivision classes, comma categories."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Sequence

EXHAUSTIVE_TRIPLES = 200_000


@dataclass
class FinCategory:
    """Objects 0..n-1, morphisms 0..m-1 as (source, target, label).

    ``composition[(f, g)]`` is g . f (first f then g) for f: a -> b, g: b -> c.
    """

    objects: list
    morphisms: list[tuple[int, int, Hashable]]
    composition: dict[tuple[int, int], int]
    identities: list[int]
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.validate:
            self.check_axioms()

    @cached_property
    def _hom(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for f, (a, b, _) in enumerate(self.morphisms):
            out.setdefault((a, b), []).append(f)
        return out

    def hom(self, a: int, b: int) -> list[int]:
        return self._hom.get((a, b), [])

    def compose(self, f: int, g: int) -> int:
        """g . f."""
        return self.composition[(f, g)]

    def source(self, f: int) -> int:
        return self.morphisms[f][0]

    def target(self, f: int) -> int:
        return self.morphisms[f][1]

    def is_iso(self, f: int) -> bool:
        a, b, _ = self.morphisms[f]
        return any(self.compose(f, g) == self.identities[a] and self.compose(g, f) == self.identities[b]
                   for g in self.hom(b, a))

    def is_ei(self) -> bool:
        return all(self.is_iso(f) for a in range(len(self.objects)) for f in self.hom(a, a))

    def check_axioms(self) -> None:
        for a, i in enumerate(self.identities):
            if self.morphisms[i][:2] != (a, a):
                raise ValueError("identity has wrong endpoints")
        for f, (a, b, _) in enumerate(self.morphisms):
            if self.compose(self.identities[a], f) != f or self.compose(f, self.identities[b]) != f:
                raise ValueError("composition is not unital")
        for (f, g), h in self.composition.items():
            if self.morphisms[h][:2] != (self.source(f), self.target(g)):
                raise ValueError("composite has wrong endpoints")
        n_triples = sum(len(self.hom(a, b)) * len(self.hom(b, c)) * len(self.hom(c, d))
                        for a in range(len(self.objects)) for b in range(len(self.objects))
                        for c in range(len(self.objects)) for d in range(len(self.objects)))
        if n_triples <= EXHAUSTIVE_TRIPLES:
            samples = ((f, g, h) for f in range(len(self.morphisms))
                       for g in self._out(self.target(f))
                       for h in self._out(self.target(g)))
        else:
            rng = random.Random(0)
            samples = []
            for _ in range(2000):
                f = rng.randrange(len(self.morphisms))
                outs = self._out(self.target(f))
                g = rng.choice(outs)
                h = rng.choice(self._out(self.target(g)))
                samples.append((f, g, h))
        for f, g, h in samples:
            if self.compose(self.compose(f, g), h) != self.compose(f, self.compose(g, h)):
                raise ValueError("composition is not associative")

    @cached_property
    def _outgoing(self) -> list[list[int]]:
        out = [[] for _ in self.objects]
        for f, (a, _, _) in enumerate(self.morphisms):
            out[a].append(f)
        return out

    def _out(self, a: int) -> list[int]:
        return self._outgoing[a]

    @classmethod
    def from_poset(cls, n: int, leq: Callable[[int, int], bool]) -> "FinCategory":
        morphisms, index = [], {}
        for a in range(n):
            for b in range(n):
                if leq(a, b):
                    index[(a, b)] = len(morphisms)
                    morphisms.append((a, b, "<="))
        comp = {(index[(a, b)], index[(b, c)]): index[(a, c)]
                for (a, b) in index for (b2, c) in index if b2 == b}
        return cls(list(range(n)), morphisms, comp, [index[(a, a)] for a in range(n)])

    @classmethod
    def from_group(cls, elements: Sequence, mul: Callable) -> "FinCategory":
        """One-object category of a group; mul(x, y) = x y, composite of f then g is g f."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        ident = next(x for x in elements if all(mul(x, y) == y for y in elements))
        morphisms = [(0, 0, x) for x in elements]
        comp = {(index[f], index[g]): index[mul(g, f)] for f in elements for g in elements}
        return cls([0], morphisms, comp, [index[ident]])


def transporter_category(poset) -> FinCategory:
    """T_e(G): Hom(L, K) = {w : ^w L <= K}; the composite of w then u is u w."""
    coset = poset.coset
    n = len(poset)
    morphisms, index = [], {}
    for a in range(n):
        for w in range(coset.order):
            wa = poset.action[w][a]
            for b in range(n):
                if poset.leq(wa, b):
                    index[(a, b, w)] = len(morphisms)
                    morphisms.append((a, b, w))
    out_by_source: dict[int, list[tuple[int, int]]] = {}
    for (a, b, w), f in index.items():
        out_by_source.setdefault(a, []).append((b, f))
    comp = {}
    for (a, b, w), f in index.items():
        for c, g in out_by_source.get(b, []):
            u = morphisms[g][2]
            comp[(f, g)] = index[(a, c, coset.mul(u, w))]
    identities = [index[(a, a, coset.identity)] for a in range(n)]
    return FinCategory(list(range(n)), morphisms, comp, identities)


@dataclass(frozen=True)
class SubdivisionClasses:
    """[S(C)]: isomorphism classes of chains of non-isomorphisms, with their order."""

    reps: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]   # (objects, morphisms)
    less: tuple[tuple[bool, ...], ...]


def _nonisos_chains(cat: FinCategory, max_len: int | None) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    noniso = [f for f in range(len(cat.morphisms)) if not cat.is_iso(f)]
    out_non: dict[int, list[int]] = {}
    for f in noniso:
        out_non.setdefault(cat.source(f), []).append(f)
    chains = []

    def extend(objs, mors):
        chains.append((objs, mors))
        if max_len is not None and len(mors) >= max_len:
            return
        for f in out_non.get(objs[-1], []):
            extend(objs + (cat.target(f),), mors + (f,))

    for a in range(len(cat.objects)):
        extend((a,), ())
    return chains


def _chain_isomorphic(cat: FinCategory, isos: dict, x, y) -> bool:
    """Natural isomorphism mu between chains x, y: mu_{i+1} phi_i = psi_i mu_i."""
    xo, xm = x
    yo, ym = y
    if len(xo) != len(yo):
        return False

    def search(i, mu_prev):
        if i == len(xo):
            return True
        for mu in isos.get((xo[i], yo[i]), []):
            if i > 0 and cat.compose(xm[i - 1], mu) != cat.compose(mu_prev, ym[i - 1]):
                continue
            if search(i + 1, mu):
                return True
        return False

    return search(0, None)


def subdivision_class_poset(cat: FinCategory, max_objects: int = 12) -> SubdivisionClasses:
    if len(cat.objects) > max_objects:
        raise ValueError("subdivision classes are computed for small categories only")
    if not cat.is_ei():
        raise ValueError("category is not EI")
    isos: dict[tuple[int, int], list[int]] = {}
    for f in range(len(cat.morphisms)):
        if cat.is_iso(f):
            isos.setdefault((cat.source(f), cat.target(f)), []).append(f)
    chains = _nonisos_chains(cat, None)
    obj_class = {}
    for a in range(len(cat.objects)):
        obj_class[a] = min(b for b in range(len(cat.objects)) if isos.get((a, b)))
    reps: list = []
    rep_keys: list = []

    def classify(ch):
        key = tuple(obj_class[o] for o in ch[0])
        for k, r in enumerate(reps):
            if rep_keys[k] == key and _chain_isomorphic(cat, isos, ch, r):
                return k
        reps.append(ch)
        rep_keys.append(key)
        return len(reps) - 1

    for ch in chains:
        classify(ch)
    n = len(reps)
    less = [[False] * n for _ in range(n)]
    for k, (objs, mors) in enumerate(list(reps)):
        for size in range(1, len(objs)):
            for idx in combinations(range(len(objs)), size):
                face_objs = tuple(objs[i] for i in idx)
                face_mors = []
                for s, t in zip(idx, idx[1:]):
                    f = mors[s]
                    for j in range(s + 1, t):
                        f = cat.compose(f, mors[j])
                    face_mors.append(f)
                j = classify((face_objs, tuple(face_mors)))
                if j >= n:
                    raise RuntimeError("a face of a chain of non-isomorphisms is not such a chain")
                less[j][k] = True
    return SubdivisionClasses(tuple(reps), tuple(map(tuple, less)))


@dataclass
class Functor:
    source: FinCategory
    target: FinCategory
    on_objects: list[int]
    on_morphisms: list[int]

    def __post_init__(self):
        s, t = self.source, self.target
        for f, (a, b, _) in enumerate(s.morphisms):
            if t.morphisms[self.on_morphisms[f]][:2] != (self.on_objects[a], self.on_objects[b]):
                raise ValueError("invalid functor: endpoints")
        for a, i in enumerate(s.identities):
            if self.on_morphisms[i] != t.identities[self.on_objects[a]]:
                raise ValueError("invalid functor: identities")
        for (f, g), h in s.composition.items():
            if t.compose(self.on_morphisms[f], self.on_morphisms[g]) != self.on_morphisms[h]:
                raise ValueError("invalid functor: composition")

    @classmethod
    def identity(cls, cat: FinCategory) -> "Functor":
        return cls(cat, cat, list(range(len(cat.objects))), list(range(len(cat.morphisms))))


def comma_category(f: Functor, y: int) -> FinCategory:
    """f/y: objects (x, beta: f(x) -> y); morphisms alpha with beta' . f(alpha) = beta."""
    src, tgt = f.source, f.target
    objects = [(x, beta) for x in range(len(src.objects)) for beta in tgt.hom(f.on_objects[x], y)]
    morphisms, index = [], {}
    for i, (x, beta) in enumerate(objects):
        for j, (x2, beta2) in enumerate(objects):
            for alpha in src.hom(x, x2):
                if tgt.compose(f.on_morphisms[alpha], beta2) == beta:
                    index[(i, j, alpha)] = len(morphisms)
                    morphisms.append((i, j, alpha))
    comp = {}
    for (i, j, a1), m1 in index.items():
        for (j2, k, a2), m2 in index.items():
            if j2 == j:
                comp[(m1, m2)] = index[(i, k, src.compose(a1, a2))]
    identities = [index[(i, i, src.identities[x])] for i, (x, _) in enumerate(objects)]
    return FinCategory(objects, morphisms, comp, identities)


def is_filtered(cat: FinCategory) -> tuple[bool, object]:
    """(True, None) or (False, witness) for the two filtering axioms."""
    n = len(cat.objects)
    if n == 0:
        return False, "empty category"
    for a in range(n):
        for b in range(n):
            if not any(cat.hom(a, c) and cat.hom(b, c) for c in range(n)):
                return False, ("objects", a, b)
    for a in range(n):
        for b in range(n):
            maps = cat.hom(a, b)
            for f in maps:
                for g in maps:
                    if f >= g:
                        continue
                    if not any(cat.compose(f, h) == cat.compose(g, h) for h in cat._out(b)):
                        return False, ("parallel", f, g)
    return True, None
