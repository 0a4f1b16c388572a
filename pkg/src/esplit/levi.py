"""Phi-tori and e-split Levi subcosets of a reflection coset.

A Levi subcoset is stored as the pair (P, P w): P is a parabolic subgroup
of W (a pointwise stabiliser) and P w is the W-part of its coset P w phi.
Both are sorted tuples of element indices of the ambient coset.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

from .arith import (
    FactoredOrderPoly,
    SubspaceCF,
    ZetaSpec,
    choose_zeta,
    eval_order_poly_valuation,
    nu_ell,
)
from .refl import ReflectionCoset, generalized_degrees, matmul, order_polynomial_of

log = logging.getLogger(__name__)

__all__ = [
    "InvariantViolation", "TorusDatum", "LeviSubcoset", "LeviPoset", "choose_zeta",
    "zeta_eigenspace", "enumerate_levis", "conjugate_levi", "minimal_levis",
    "torus_defect_shift", "levi_order_polynomial", "levi_defect",
]


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class TorusDatum:
    element: int            # W-part w of a = w phi
    subspace: SubspaceCF    # V' with a acting as zeta on V'

    @property
    def rank(self) -> int:
        return self.subspace.rank


@dataclass(frozen=True)
class LeviSubcoset:
    parabolic: tuple[int, ...]
    coset: tuple[int, ...]
    torus: TorusDatum = field(compare=False, hash=False, repr=False)

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.parabolic, self.coset

    @property
    def rep(self) -> int:
        """Least element index of P w."""
        return self.coset[0]

    @property
    def is_toric(self) -> bool:
        return len(self.parabolic) == 1


def _field_conductor(zeta: ZetaSpec) -> int:
    return zeta.e if zeta.e > 2 else 1


def zeta_eigenspace(coset: ReflectionCoset, w: int, zeta: ZetaSpec) -> SubspaceCF:
    """ker(w phi - zeta) over Q(zeta_e)."""
    n = _field_conductor(zeta)
    a = coset.coset_matrix(w)
    z = zeta.as_cyclotomic.lift(n) if zeta.as_cyclotomic.n != n else zeta.as_cyclotomic
    rows = [[(z * -1 + a[i][j]) if i == j else a[i][j] for j in range(coset.rank)]
            for i in range(coset.rank)]
    return SubspaceCF.kernel(rows, n)


def _candidates(coset: ReflectionCoset, zeta: ZetaSpec, lattice, w: int):
    E = zeta_eigenspace(coset, w, zeta)
    out = []
    seen = set()
    for X in lattice:
        U = E & X
        if U in seen:
            continue
        seen.add(U)
        P = coset.pointwise_stabilizer(U)
        Pw = tuple(sorted(coset.mul(p, w) for p in P))
        out.append((P, Pw, U))
    return out


_WORKER = {}


def _worker_init(coset, zeta, lattice):
    _WORKER["args"] = (coset, zeta, lattice)


def _worker_candidates(w):
    coset, zeta, lattice = _WORKER["args"]
    return _candidates(coset, zeta, lattice, w)


class LeviPoset:
    """The poset L_e of e-split Levi subcosets with its W-action."""

    def __init__(self, coset: ReflectionCoset, zeta: ZetaSpec, nodes: list[LeviSubcoset]):
        self.coset = coset
        self.zeta = zeta
        self.nodes = nodes
        self.index = {L.key: i for i, L in enumerate(nodes)}
        n = len(nodes)
        psets = [frozenset(L.parabolic) for L in nodes]
        csets = [frozenset(L.coset) for L in nodes]
        self.less = [[i != j and psets[i] <= psets[j] and csets[i] <= csets[j] for j in range(n)]
                     for i in range(n)]
        self.action = [[self._act(u, i) for i in range(n)] for u in range(coset.order)]
        self._check_invariants()

    def _act(self, u: int, i: int) -> int:
        L = self.nodes[i]
        P = tuple(sorted(self.coset.conj(u, p) for p in L.parabolic))
        c = tuple(sorted(self.coset.coset_conj(u, x) for x in L.coset))
        j = self.index.get((P, c))
        if j is None:
            raise InvariantViolation("conjugate of an e-split Levi is not in the poset")
        return j

    def _check_invariants(self) -> None:
        n = len(self.nodes)
        for i in range(n):
            for j in range(n):
                if self.less[i][j] and self.less[j][i]:
                    raise InvariantViolation("inclusion is not antisymmetric")
                for k in range(n):
                    if self.less[i][j] and self.less[j][k] and not self.less[i][k]:
                        raise InvariantViolation("inclusion is not transitive")
        for row in self.action:
            for i in range(n):
                for j in range(n):
                    if self.less[i][j] != self.less[row[i]][row[j]]:
                        raise InvariantViolation("W-action does not preserve inclusion")
        tops = [i for i in range(n) if not any(self.less[i])]
        if tops != [self.top]:
            raise InvariantViolation("the coset itself is not the unique maximum")

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def top(self) -> int:
        key = (tuple(range(self.coset.order)), tuple(range(self.coset.order)))
        return self.index[key]

    def leq(self, i: int, j: int) -> bool:
        return i == j or self.less[i][j]

    def below(self, j: int, strict: bool = False) -> list[int]:
        return [i for i in range(len(self.nodes)) if self.less[i][j] or (not strict and i == j)]

    def conjugate(self, u: int, i: int) -> int:
        return self.action[u][i]

    def normalizer(self, i: int) -> tuple[int, ...]:
        """N_W(L): the W-stabiliser of the node."""
        return tuple(u for u in range(self.coset.order) if self.action[u][i] == i)

    @cached_property
    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.nodes)):
            if i in seen:
                continue
            orb = tuple(sorted({row[i] for row in self.action}))
            seen.update(orb)
            out.append(orb)
        return out

    def orbit_of(self, i: int) -> int:
        return next(k for k, orb in enumerate(self.orbits) if i in orb)

    @cached_property
    def minimal(self) -> list[int]:
        return [i for i in range(len(self.nodes)) if not any(self.less[k][i] for k in range(len(self.nodes)))]

    def minimal_below(self, j: int) -> list[int]:
        return [i for i in self.minimal if self.leq(i, j)]

    def class_name(self, orbit: int) -> str:
        return f"O{orbit}"


def enumerate_levis(coset: ReflectionCoset, zeta: ZetaSpec, workers: int = 1) -> LeviPoset:
    """All centralisers C(T) = (P(U) w phi, V) of Phi-tori T = (w phi|U, U).

    Every U = E_zeta(w phi) & X with X in the intersection lattice is tried;
    this is exhaustive because C_W(V') = C_W(Fix(C_W(V')) & E_zeta(w phi)).
    """
    for msg in coset.very_good_warnings(zeta.ell):
        log.warning(msg)
    n = 1 if zeta.e <= 2 else zeta.e
    lattice = [X.lift(n) for X in coset.intersection_lattice]
    ws = range(coset.order)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_worker_init,
                                 initargs=(coset, zeta, lattice)) as pool:
            results = list(pool.map(_worker_candidates, ws))
    else:
        results = [_candidates(coset, zeta, lattice, w) for w in ws]
    found: dict[tuple, LeviSubcoset] = {}
    for w, cands in zip(ws, results):
        for P, Pw, U in cands:
            if (P, Pw) not in found:
                found[(P, Pw)] = LeviSubcoset(P, Pw, TorusDatum(w, U))
    nodes = sorted(found.values(), key=lambda L: (len(L.parabolic), L.parabolic, L.coset))
    poset = LeviPoset(coset, zeta, nodes)
    # soundness of every torus datum
    for L in nodes:
        a = coset.coset_matrix(L.torus.element)
        for p in L.parabolic:
            conj = matmul(matmul(a, coset.elements[p]), _inverse(coset, a))
            if coset.index.get(conj) not in L.parabolic:
                raise InvariantViolation("coset element does not normalise P")
    return poset


def _inverse(coset: ReflectionCoset, a):
    # a = w phi, a^-1 = phi^-1 w^-1
    w = coset.index[matmul(a, coset.phi_inv)]
    return matmul(coset.phi_inv, coset.elements[coset.inv(w)])


def conjugate_levi(poset: LeviPoset, u: int, i: int) -> int:
    return poset.conjugate(u, i)


@dataclass
class MinimalReport:
    nodes: list[int]
    transitive: bool


def minimal_levis(poset: LeviPoset) -> MinimalReport:
    mins = poset.minimal
    orbit = {poset.action[u][mins[0]] for u in range(poset.coset.order)} if mins else set()
    transitive = set(mins) <= orbit
    if not transitive:
        raise InvariantViolation("W is not transitive on minimal e-split Levis")
    return MinimalReport(mins, transitive)


def levi_order_polynomial(poset: LeviPoset, i: int) -> FactoredOrderPoly:
    """|L|(x) for L = (P w phi, V), from the generalized degrees of P w phi."""
    coset = poset.coset
    L = poset.nodes[i]
    elems = [coset.elements[p] for p in L.parabolic]
    twist = coset.coset_matrix(L.rep)
    n_refl = sum(1 for p in L.parabolic if p in set(coset.reflections))
    return order_polynomial_of(generalized_degrees(elems, twist, n_refl), n_refl)


def levi_defect(poset: LeviPoset, i: int) -> int:
    """nu_ell(|L|(q))."""
    return eval_order_poly_valuation(levi_order_polynomial(poset, i), poset.zeta)


def torus_defect_shift(poset: LeviPoset, i: int) -> int:
    if not poset.nodes[i].is_toric:
        raise ValueError("torus_defect_shift needs a toric Levi")
    return levi_defect(poset, i)


def integer_torus_valuation(poset: LeviPoset, i: int) -> int:
    """nu_ell(det(q - w phi)) as a rational integer; cross-check for toric Levis."""
    from .refl import char_poly_one_minus_t
    a = poset.coset.coset_matrix(poset.nodes[i].rep)
    q = poset.zeta.q
    # det(q - a) = q^r det(1 - a/q)
    coeffs = char_poly_one_minus_t(a)
    r = len(a)
    value = sum(c * q ** (r - k) for k, c in enumerate(coeffs))
    return nu_ell(int(value), poset.zeta.ell)
