"""The sign-reversing involution from the proof of the Dade-like identity."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..cat import GPoset, chain_orbits
from .pairs import Instance, PairSystem, relative_weyl_group
from .verify import _pair_count, chain_pair_classes, global_pair_classes

Triple = tuple[tuple[int, ...], Instance]    # (orbit representative chain, class-least instance)


@dataclass
class InvolutionReport:
    triples: int
    fixed_points: list[Triple]
    pairs: list[tuple[Triple, Triple]]
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"passed": self.passed, "triples": self.triples,
                "fixed_points": [[list(s), list(i)] for s, i in self.fixed_points],
                "paired": len(self.pairs), "failures": self.failures}


def cancellation_involution(system: PairSystem, pair_classes: str = "chain") -> InvolutionReport:
    """sigma -> rho: add L below L(sigma) if L < L(sigma), remove L(sigma) if L = L(sigma)."""
    poset = system.poset
    gp = GPoset.from_levi_poset(poset)
    orbits = chain_orbits(gp, "star")
    where = {c: k for k, o in enumerate(orbits) for c in o.members}
    triples: list[Triple] = []
    class_of: dict[tuple[int, Instance], Instance] = {}
    for k, o in enumerate(orbits):
        for cls in chain_pair_classes(system, o.rep, pair_classes):
            triples.append((o.rep, cls[0]))
            for inst in cls:
                class_of[(k, inst)] = cls[0]
    coset = poset.coset
    block = {inst: k for k, cls in enumerate(global_pair_classes(system)) for inst in cls}

    def canonical(chain: tuple[int, ...], inst: Instance) -> Triple:
        k = where[chain]
        rep = orbits[k].rep
        u = next(u for u in range(coset.order)
                 if _ordered(poset, [poset.action[u][t] for t in chain]) == rep)
        return rep, class_of[(k, system.act(u, inst))]

    def image(t: Triple) -> tuple[Triple | None, tuple[int, ...] | None]:
        sigma, inst = t
        j = inst[0]
        if j != sigma[0]:
            rho = (j,) + sigma
        elif len(sigma) > 2:
            rho = sigma[1:]
        else:
            return None, None
        return canonical(rho, inst), rho

    fixed, paired, failures = [], [], []
    done = set()
    for t in triples:
        if t in done:
            continue
        img, rho = image(t)
        if img is None:
            if not (len(t[0]) == 2 and t[1][0] == t[0][0]):
                failures.append({"kind": "unexpected fixed point", "triple": _fmt(t)})
            fixed.append(t)
            done.add(t)
            continue
        back, _ = image(img)
        if back != t:
            failures.append({"kind": "not an involution", "triple": _fmt(t), "image": _fmt(img)})
            continue
        sigma, inst = t
        if abs(len(rho) - len(sigma)) != 1:
            failures.append({"kind": "sign not reversed", "triple": _fmt(t)})
        if block[inst] != block[img[1]]:
            failures.append({"kind": "pair class not preserved", "triple": _fmt(t)})
        g_sigma = relative_weyl_group(system, inst, sigma).subgroup
        g_rho = relative_weyl_group(system, inst, rho).subgroup
        if g_sigma != g_rho:
            failures.append({"kind": "relative Weyl groups differ", "triple": _fmt(t)})
        if _pair_count(system, inst, sigma) != _pair_count(system, img[1], img[0]):
            failures.append({"kind": "defect counts differ", "triple": _fmt(t)})
        paired.append((t, img))
        done.update({t, img})
    fixed_set = set(fixed)
    for t in triples:
        is_sigma_l = len(t[0]) == 2 and t[1][0] == t[0][0]
        if is_sigma_l != (t in fixed_set):
            failures.append({"kind": "fixed points are not exactly the sigma_L", "triple": _fmt(t)})
    return InvolutionReport(len(triples), fixed, paired, failures)


def _ordered(poset, terms):
    return tuple(sorted(terms, key=lambda i: sum(1 for t in terms if poset.less[t][i])))


def _fmt(t: Triple) -> list:
    return [list(t[0]), list(t[1])]
