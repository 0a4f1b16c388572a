"""Command-line driver.  Exit codes: 0 pass, 1 a mathematical check failed, 2 input error."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Callable

from .arith import NotRealizableError, eval_order_poly_valuation
from .cat import (
    DirectedGGraph,
    GPoset,
    bux_check,
    homology,
    load_poset_file,
    orbit_complex,
)
from .chars import (
    FiniteGroup,
    GroupTooLargeError,
    character_degrees,
    cyclic_group,
    dihedral_group,
    irr_defect_count,
    symmetric_group,
)
from .config import ConfigError, RunConfig
from .dade import (
    DatasetError,
    PairSystem,
    PrincipalModeError,
    cancellation_involution,
    dataset_pairs,
    ingest_cuspidal_dataset,
    principal_pairs,
    relative_weyl_group,
    verify_dade,
)
from .dade.verify import global_pair_classes
from .levi import InvariantViolation, enumerate_levis, levi_defect, levi_order_polynomial, minimal_levis
from .refl import GroupTooLargeError as CosetTooLargeError
from .refl import NotAReflectionCosetError

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
INPUT_ERRORS = (ConfigError, DatasetError, PrincipalModeError, NotRealizableError,
                CosetTooLargeError, GroupTooLargeError, ValueError, OSError)


def _emit(args, doc: dict, table: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(table.rstrip("\n") + "\n")


def _config(args) -> RunConfig:
    return RunConfig(cartan_type=args.type, twist=args.twist, gens_file=args.gens_file,
                     ell=args.ell, q=args.q, mode=getattr(args, "mode", "principal"),
                     dataset=getattr(args, "dataset", None), json=args.json,
                     d_max=getattr(args, "d_max", None), workers=args.workers,
                     zeta_order=args.zeta_order)


def _header(cfg: RunConfig, command: str, coset=None, zeta=None) -> dict:
    hdr = {"command": command}
    if coset is not None:
        hdr.update({"coset": coset.name, "rank": coset.rank, "order_W": coset.order})
    if zeta is not None:
        hdr.update({"ell": zeta.ell, "q": zeta.q, "e": zeta.e})
        if zeta.tainted:
            hdr["TAINTED"] = f"zeta order overridden to {zeta.e}; e is not derived from (q, ell)"
        warnings = coset.very_good_warnings(zeta.ell) if coset is not None else []
        if warnings:
            hdr["warnings"] = warnings
    return hdr


def _header_lines(hdr: dict) -> str:
    return "\n".join(f"# {k}: {v}" for k, v in hdr.items())


def _poset(cfg: RunConfig):
    coset = cfg.coset()
    zeta = cfg.zeta()
    return coset, zeta, enumerate_levis(coset, zeta, workers=cfg.workers)


def _levi_record(poset, i: int) -> dict:
    L = poset.nodes[i]
    return {"index": i, "name": "G" if i == poset.top else ("T" if L.is_toric else "L") + str(i),
            "order_P": len(L.parabolic), "coset_rep": L.rep, "toric": L.is_toric,
            "torus_rank": L.torus.rank, "orbit": poset.orbit_of(i),
            "order_poly": str(levi_order_polynomial(poset, i)),
            "defect": levi_defect(poset, i)}


# -- commands ------------------------------------------------------------------

def cmd_levis(args) -> int:
    cfg = _config(args)
    coset, zeta, poset = _poset(cfg)
    report = minimal_levis(poset)
    nodes = [_levi_record(poset, i) for i in range(len(poset))]
    min_orbits = sorted({poset.orbit_of(i) for i in report.nodes})
    doc = {"header": _header(cfg, "levis", coset, zeta), "nodes": nodes,
           "minimal": report.nodes, "minimal_orbits": min_orbits,
           "transitive_on_minimal": report.transitive,
           "orbits": [list(o) for o in poset.orbits],
           "less": [[int(x) for x in row] for row in poset.less]}
    lines = [_header_lines(doc["header"]),
             f"{len(nodes)} e-split Levi subcosets, {len(poset.orbits)} W-orbits, "
             f"{len(min_orbits)} minimal orbit(s)",
             f"{'idx':>4} {'name':<6} {'|P|':>5} {'rep':>5} {'rank':>5} {'orbit':>6} {'defect':>7}  order polynomial"]
    for n in nodes:
        lines.append(f"{n['index']:>4} {n['name']:<6} {n['order_P']:>5} {n['coset_rep']:>5} "
                     f"{n['torus_rank']:>5} {n['orbit']:>6} {n['defect']:>7}  {n['order_poly']}")
    lines.append("minimal: " + " ".join(map(str, report.nodes)))
    lines.append("inclusion (row < column):")
    lines.extend("  " + "".join("1" if x else "." for x in row) for row in poset.less)
    _emit(args, doc, "\n".join(lines))
    return EXIT_PASS


def _gposet(args):
    if args.poset_file:
        return None, load_poset_file(args.poset_file)
    cfg = _config(args)
    coset, zeta, poset = _poset(cfg)
    minimal_levis(poset)
    return _header(cfg, args.command, coset, zeta), GPoset.from_levi_poset(poset)


def cmd_orbit_homology(args) -> int:
    hdr, gp = _gposet(args)
    hdr = hdr or {"command": "orbit-homology", "poset_file": args.poset_file}
    op, cx = orbit_complex(gp)
    h = homology(cx)
    doc = {"header": hdr, "chain_orbits": [list(o.rep) for o in op.orbits],
           "complex": {"vertices": len(cx.vertices), "f_vector": cx.f_vector(),
                       "euler_characteristic": cx.euler_characteristic()},
           "homology": h.to_dict(),
           "note": "simple connectivity is not checked; vanishing reduced homology and the Bux "
                   "hypotheses are the certified desk-scale evidence"}
    lines = [_header_lines(hdr),
             f"chain orbits: {len(op.orbits)}; f-vector {cx.f_vector()}; "
             f"euler characteristic {cx.euler_characteristic()}",
             f"{'deg':>4} {'betti':>6}  torsion"]
    for k, (b, t) in enumerate(zip(h.betti, h.torsion)):
        lines.append(f"{k - 1:>4} {b:>6}  {list(t)}")
    lines.append(f"note: {doc['note']}")
    lines.append("reduced homology vanishes" if h.acyclic else "NONVANISHING reduced homology")
    _emit(args, doc, "\n".join(lines))
    return EXIT_PASS if h.acyclic else EXIT_FAIL


def cmd_check_bux(args) -> int:
    hdr, gp = _gposet(args)
    hdr = hdr or {"command": "check-bux", "poset_file": args.poset_file}
    rep = bux_check(DirectedGGraph.from_gposet(gp))
    doc = {"header": hdr, "bux": rep.to_dict()}
    lines = [_header_lines(hdr),
             f"(i) transitive on minimal vertices {rep.minimal_vertices}: "
             f"{'yes' if rep.transitive_on_minimal else 'NO'}",
             f"(ii) non-minimal simplices checked: {rep.simplices_checked}, failures: "
             f"{sum(1 for f in rep.failures if 'simplex' in f)}",
             "Bux hypotheses hold" if rep.passed else "Bux hypotheses FAIL"]
    _emit(args, doc, "\n".join(lines))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _pair_system(cfg: RunConfig, poset, toric_only: bool):
    if cfg.mode == "dataset":
        ds = ingest_cuspidal_dataset(cfg.dataset, poset)
        pairs, gens = dataset_pairs(poset, ds)
        return PairSystem(poset, pairs, gens), ds.uch_count
    return PairSystem(poset, principal_pairs(poset, toric_only)), None


def cmd_verify_dade(args) -> int:
    cfg = _config(args)
    coset, zeta, poset = _poset(cfg)
    system, uch = _pair_system(cfg, poset, args.toric_only)
    d_range = range(0, cfg.d_max + 1) if cfg.d_max is not None else None
    hdr = _header(cfg, "verify-dade", coset, zeta)
    hdr["mode"] = cfg.mode
    report = verify_dade(system, d_range, args.pair_classes, hdr, uch)
    if cfg.mode == "principal":
        report.notes.append("principal mode: counts restricted to the principal e-series "
                            "block (L_min, 1)")
    inv = cancellation_involution(system, args.pair_classes)
    ok = report.passed and inv.passed
    doc = report.to_dict()
    doc["involution"] = inv.to_dict()
    doc["passed"] = ok
    lines = [_header_lines(report.header), report.table(), "blocks:"]
    for b in report.blocks:
        lines.append(f"  {b['pair']} shift {b['defect_shift']}: lhs {b['lhs']} rhs {b['rhs']} "
                     f"{'ok' if b['passed'] else 'MISMATCH'}")
    lines.append(f"star chain orbits: {len(report.chains)}")
    for c in report.chains:
        lines.append(f"  {c['chain']} sign {c['sign']:+d} |N_W(sigma)|={c['stabilizer_order']} "
                     f"k_u={c['k_u']}")
    if report.partition is not None:
        p = report.partition
        lines.append(f"partition: sum |Irr(W_G(L,lambda))| = {p['sum_irr_relative_weyl']}, "
                     f"|Uch| = {p['uch_count']}")
    lines.append(f"involution: {inv.triples} triples, {len(inv.fixed_points)} fixed, "
                 f"{len(inv.pairs)} cancelling pairs, {'ok' if inv.passed else 'FAILED'}")
    lines.extend(f"note: {n}" for n in report.notes)
    lines.append("Theorem D identity holds" if ok else "Theorem D identity FAILS")
    _emit(args, doc, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_order_poly(args) -> int:
    cfg = _config(args)
    coset = cfg.coset()
    p = coset.order_polynomial()
    doc = {"header": _header(cfg, "order-poly", coset),
           "degrees": [[d, str(eps)] for d, eps in coset.degrees],
           "N": coset.n_reflections, "order_poly": str(p)}
    lines = [_header_lines(doc["header"]), f"|G|(x) = {p}",
             "degrees: " + ", ".join(f"({d}, {eps})" for d, eps in coset.degrees)]
    if cfg.ell is not None:
        zeta = cfg.zeta()
        doc["header"] = _header(cfg, "order-poly", coset, zeta)
        doc["defect"] = eval_order_poly_valuation(p, zeta)
        lines.append(f"nu_{zeta.ell}(|G|({zeta.q})) = {doc['defect']}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_PASS


NAMED_GROUPS: dict[str, Callable[[int], FiniteGroup]] = {
    "C": cyclic_group, "S": symmetric_group, "D": lambda n: dihedral_group(n // 2)}


def _named_group(name: str) -> FiniteGroup:
    kind, num = name[:1].upper(), name[1:]
    if kind not in NAMED_GROUPS or not num.isdigit() or int(num) < 1:
        raise ConfigError(f"unknown group {name!r}; use Cn, Sn or Dn (dihedral of order n)")
    n = int(num)
    if kind == "D" and n % 2:
        raise ConfigError("dihedral groups have even order")
    return NAMED_GROUPS[kind](n)


def cmd_char_degrees(args) -> int:
    groups: list[tuple[str, FiniteGroup]] = []
    hdr = {"command": "char-degrees"}
    if args.group:
        groups = [(g, _named_group(g)) for g in args.group]
    else:
        cfg = _config(args)
        coset, zeta, poset = _poset(cfg)
        hdr = _header(cfg, "char-degrees", coset, zeta)
        groups.append(("W", FiniteGroup.from_elements(range(coset.order), coset.mul)))
        system = PairSystem(poset, principal_pairs(poset))
        for cls in global_pair_classes(system):
            groups.append((f"W_G({cls[0][0]},{cls[0][1]})",
                           relative_weyl_group(system, cls[0]).quotient))
    out = []
    ok = True
    for name, G in groups:
        degs = character_degrees(G)
        classes = len(G.conjugacy_classes())
        rec = {"group": name, "order": G.order, "classes": classes, "degrees": list(degs.degrees),
               "sum_of_squares_ok": sum(d * d for d in degs.degrees) == G.order,
               "class_count_ok": len(degs.degrees) == classes}
        if args.ell is not None:
            rec["defects"] = {str(d): c for d, c in irr_defect_count(G, args.ell).counts}
        ok = ok and rec["sum_of_squares_ok"] and rec["class_count_ok"]
        out.append(rec)
    doc = {"header": hdr, "groups": out}
    lines = [_header_lines(hdr), f"{'group':<16} {'|H|':>5} {'cls':>4}  degrees"]
    for r in out:
        extra = f"  defects {r['defects']}" if "defects" in r else ""
        lines.append(f"{r['group']:<16} {r['order']:>5} {r['classes']:>4}  {r['degrees']}{extra}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="esplit", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="built-in Cartan type: A1 A2 A3 B2 B3 G2")
    common.add_argument("--twist", default="id", help="id, minus or graph (type A)")
    common.add_argument("--gens-file", help="JSON coset config with generator and twist matrices")
    common.add_argument("--ell", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--zeta-order", type=int, help="override e (taints the report)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("levis", parents=[common], help="list L_e(G)").set_defaults(func=cmd_levis)
    for name, func in (("orbit-homology", cmd_orbit_homology), ("check-bux", cmd_check_bux)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--poset-file", help="JSON G-poset instead of a coset (negative controls)")
        p.set_defaults(func=func)
    p = sub.add_parser("verify-dade", parents=[common], help="check the Dade-like identity")
    p.add_argument("--mode", choices=["principal", "dataset"], default="principal")
    p.add_argument("--dataset")
    p.add_argument("--d-max", type=int)
    p.add_argument("--pair-classes", choices=["chain", "paper"], default="chain",
                   help="classes of pairs of L(sigma): under N_W(sigma) or under W_L(sigma)")
    p.add_argument("--toric-only", action="store_true",
                   help="principal mode: reject non-toric minimal Levis")
    p.set_defaults(func=cmd_verify_dade)
    sub.add_parser("order-poly", parents=[common]).set_defaults(func=cmd_order_poly)
    p = sub.add_parser("char-degrees", parents=[common])
    p.add_argument("--group", action="append", help="Cn, Sn or Dn; repeatable")
    p.set_defaults(func=cmd_char_degrees)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvariantViolation, NotAReflectionCosetError) as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
