"""The k-invariants of unipotent defect counting and the Theorem D verifier."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from ..cat import GPoset, chain_orbits
from ..cat.chains import ChainOrbit
from ..chars import DefectCount, character_degrees, irr_defect_count
from ..levi import LeviPoset, levi_defect
from .pairs import (
    Instance,
    PairSystem,
    chain_stabilizer,
    cuspidal_pairs,
    relative_weyl_group,
)

PAIR_CLASSES = ("chain", "paper")


def _add(acc: Counter, dc: DefectCount, sign: int = 1) -> None:
    for d, c in dc.counts:
        acc[d] += sign * c


def _pair_count(system: PairSystem, inst: Instance, sigma=None) -> DefectCount:
    rw = relative_weyl_group(system, inst, sigma)
    shift = system.pair_at(*inst).defect_shift
    return irr_defect_count(rw.quotient, system.poset.zeta.ell).shifted(shift)


def global_pair_classes(system: PairSystem) -> list[tuple[Instance, ...]]:
    """W-classes of cuspidal pairs of G."""
    return cuspidal_pairs(system, system.poset.top, range(system.coset.order))


def k_u(system: PairSystem) -> DefectCount:
    acc: Counter = Counter()
    for cls in global_pair_classes(system):
        _add(acc, _pair_count(system, cls[0]))
    return DefectCount.from_dict(acc)


def k_u_c(system: PairSystem) -> DefectCount:
    acc: Counter = Counter()
    for cls in global_pair_classes(system):
        if cls[0][0] == system.poset.top:
            _add(acc, _pair_count(system, cls[0]))
    return DefectCount.from_dict(acc)


def chain_pair_classes(system: PairSystem, sigma: Sequence[int], pair_classes: str = "chain"
                       ) -> list[tuple[Instance, ...]]:
    """Classes of cuspidal pairs of L(sigma) = sigma[0].

    "paper": under W_{L(sigma)} as in the definition of k_u(G(q), sigma);
    "chain": under N_W(sigma), i.e. W-orbits of triples (sigma, (L, lambda)).
    """
    if pair_classes not in PAIR_CLASSES:
        raise ValueError(f"pair_classes must be one of {PAIR_CLASSES}")
    group = (system.poset.nodes[sigma[0]].parabolic if pair_classes == "paper"
             else chain_stabilizer(system.poset, sigma))
    return cuspidal_pairs(system, sigma[0], group)


def k_u_chain(system: PairSystem, sigma: Sequence[int], pair_classes: str = "chain") -> DefectCount:
    acc: Counter = Counter()
    for cls in chain_pair_classes(system, sigma, pair_classes):
        _add(acc, _pair_count(system, cls[0], sigma))
    return DefectCount.from_dict(acc)


def star_orbits(poset: LeviPoset) -> list[ChainOrbit]:
    return chain_orbits(GPoset.from_levi_poset(poset), "star")


def _block_of(system: PairSystem, inst: Instance, blocks: list[tuple[Instance, ...]]) -> int:
    return next(k for k, b in enumerate(blocks) if inst in b)


@dataclass
class KRow:
    d: int
    k_u: int
    k_u_c: int
    rhs: int

    @property
    def lhs(self) -> int:
        return self.k_u - self.k_u_c

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class KReport:
    header: dict
    rows: list[KRow]
    blocks: list[dict]
    chains: list[dict]
    partition: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        ok = all(r.passed for r in self.rows) and all(b["passed"] for b in self.blocks)
        if self.partition is not None:
            ok = ok and self.partition["passed"]
        return ok

    def to_dict(self) -> dict:
        return {
            "header": self.header,
            "passed": self.passed,
            "rows": [{"d": r.d, "k_u": r.k_u, "k_u_c": r.k_u_c, "lhs": r.lhs, "rhs": r.rhs,
                      "passed": r.passed} for r in self.rows],
            "blocks": self.blocks,
            "chains": self.chains,
            "partition": self.partition,
            "notes": self.notes,
        }

    def table(self) -> str:
        lines = [f"{'d':>3} {'k_u':>6} {'k_u_c':>6} {'LHS':>6} {'RHS':>6}  ok"]
        for r in self.rows:
            lines.append(f"{r.d:>3} {r.k_u:>6} {r.k_u_c:>6} {r.lhs:>6} {r.rhs:>6}  "
                         f"{'yes' if r.passed else 'NO'}")
        return "\n".join(lines)


def _label(system: PairSystem, inst: Instance) -> str:
    j, lab = inst
    return f"({'G' if j == system.poset.top else j},{lab})"


def verify_dade(system: PairSystem, d_range: Sequence[int] | None = None,
                pair_classes: str = "chain", header: dict | None = None,
                uch_count: int | None = None) -> KReport:
    poset = system.poset
    zeta = poset.zeta
    ku, kuc = k_u(system), k_u_c(system)
    blocks = global_pair_classes(system)
    rhs: Counter = Counter()
    block_lhs = [Counter() for _ in blocks]
    block_rhs = [Counter() for _ in blocks]
    for k, cls in enumerate(blocks):
        if cls[0][0] != poset.top:
            _add(block_lhs[k], _pair_count(system, cls[0]))
    chains = []
    seen_d = set(d for d, _ in ku.counts)
    for orb in star_orbits(poset):
        sigma = orb.rep
        sign = (-1) ** (orb.length + 1)
        total: Counter = Counter()
        for cls in chain_pair_classes(system, sigma, pair_classes):
            dc = _pair_count(system, cls[0], sigma)
            _add(total, dc)
            _add(block_rhs[_block_of(system, cls[0], blocks)], dc, sign)
        _add(rhs, DefectCount.from_dict(total), sign)
        seen_d.update(total)
        chains.append({"chain": [("G" if t == poset.top else t) for t in sigma],
                       "length": orb.length, "sign": sign,
                       "stabilizer_order": len(orb.stabilizer),
                       "k_u": {str(d): c for d, c in sorted(total.items()) if c}})
    if d_range is None:
        top = levi_defect(poset, poset.top)
        max_shift = max((p.defect_shift for p in system.pairs), default=0)
        d_range = range(0, max(top + max_shift, max(seen_d, default=0)) + 1)
    rows = [KRow(d, ku.get(d), kuc.get(d), rhs.get(d, 0)) for d in d_range]
    block_reports = []
    for k, cls in enumerate(blocks):
        keys = sorted(set(block_lhs[k]) | set(block_rhs[k]))
        ok = all(block_lhs[k].get(d, 0) == block_rhs[k].get(d, 0) for d in keys)
        block_reports.append({
            "pair": _label(system, cls[0]),
            "defect_shift": system.pair_at(*cls[0]).defect_shift,
            "lhs": {str(d): block_lhs[k][d] for d in keys if block_lhs[k][d]},
            "rhs": {str(d): block_rhs[k][d] for d in keys if block_rhs[k][d]},
            "passed": ok,
        })
    partition = None
    if uch_count is not None:
        total = sum(len(character_degrees(relative_weyl_group(system, cls[0]).quotient).degrees)
                    for cls in blocks)
        partition = {"uch_count": uch_count, "sum_irr_relative_weyl": total,
                     "passed": total == uch_count}
    hdr = dict(header or {})
    hdr.update({"ell": zeta.ell, "q": zeta.q, "e": zeta.e, "pair_classes": pair_classes})
    return KReport(hdr, rows, block_reports, chains, partition)
