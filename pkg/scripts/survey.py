#!/usr/bin/env python3
"""Survey: Levi posets, contractibility and the Dade-like identity over many (coset, ell, q).

For every case the script enumerates L_e(G), checks Bux's criterion and the
homology of the orbit complex, verifies Theorem D in principal mode under both
pair-class conventions, and runs the cancellation involution.  It prints a
fixed-width table and optionally writes the full records as JSON.

    python scripts/survey.py                    # default case list
    python scripts/survey.py --case B3:id:7:2 --json survey.json
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from esplit.arith import choose_zeta
from esplit.cat import DirectedGGraph, GPoset, bux_check, homology, orbit_complex
from esplit.dade import PairSystem, cancellation_involution, principal_pairs, star_orbits, verify_dade
from esplit.levi import enumerate_levis, minimal_levis
from esplit.refl import ReflectionCoset

DEFAULT_CASES = [
    "A1:id:3:2", "A2:id:7:2", "B2:id:5:2", "G2:id:7:2", "A2:graph:7:2",
    "A2:id:7:8", "A2:id:5:4", "B2:id:3:2", "A3:id:5:2", "A3:id:7:8",
    "G2:id:13:3", "B3:id:7:2", "A3:graph:5:2",
]


def survey_case(spec: str, workers: int) -> dict:
    t, tw, ell, q = spec.split(":")
    ell, q = int(ell), int(q)
    start = time.perf_counter()
    coset = ReflectionCoset.from_type(t, tw)
    zeta = choose_zeta(q, ell)
    poset = enumerate_levis(coset, zeta, workers=workers)
    minimal_levis(poset)
    gp = GPoset.from_levi_poset(poset)
    bux = bux_check(DirectedGGraph.from_gposet(gp))
    op, cx = orbit_complex(gp)
    hom = homology(cx)
    system = PairSystem(poset, principal_pairs(poset))
    reports = {mode: verify_dade(system, pair_classes=mode) for mode in ("chain", "paper")}
    inv = cancellation_involution(system)
    return {
        "case": spec, "coset": coset.name, "order_W": coset.order, "ell": ell, "q": q, "e": zeta.e,
        "levis": len(poset), "orbits": len(poset.orbits), "minimal": len(poset.minimal),
        "star_orbits": len(star_orbits(poset)), "orbit_poset": len(op.orbits),
        "bux": bux.passed, "acyclic": hom.acyclic,
        "dade": {m: r.passed for m, r in reports.items()},
        "rows": [[r.d, r.lhs, r.rhs] for r in reports["chain"].rows if r.lhs or r.rhs],
        "involution": {"triples": inv.triples, "fixed": len(inv.fixed_points),
                       "pairs": len(inv.pairs), "passed": inv.passed},
        "seconds": round(time.perf_counter() - start, 2),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--case", action="append", help="TYPE:TWIST:ELL:Q (repeatable)")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", help="write all records to this file")
    args = ap.parse_args(argv)
    records = []
    print(f"{'case':<14} {'|W|':>4} {'e':>2} {'#L':>4} {'#orb':>4} {'#min':>4} {'#star':>5} "
          f"{'bux':>4} {'H=0':>4} {'D':>4} {'inv':>9} {'sec':>6}  nonzero rows (d, lhs, rhs)")
    ok = True
    for spec in args.case or DEFAULT_CASES:
        r = survey_case(spec, args.workers)
        records.append(r)
        good = r["bux"] and r["acyclic"] and all(r["dade"].values()) and r["involution"]["passed"]
        ok &= good
        inv = f"{r['involution']['fixed']}f/{r['involution']['pairs']}p"
        print(f"{spec:<14} {r['order_W']:>4} {r['e']:>2} {r['levis']:>4} {r['orbits']:>4} {r['minimal']:>4} "
              f"{r['star_orbits']:>5} {'ok' if r['bux'] else 'NO':>4} {'ok' if r['acyclic'] else 'NO':>4} "
              f"{'ok' if all(r['dade'].values()) else 'NO':>4} {inv:>9} {r['seconds']:>6}  "
              f"{' '.join(f'({d},{a},{b})' for d, a, b in r['rows'])}")
        sys.stdout.flush()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(records, fh, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
