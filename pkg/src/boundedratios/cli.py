"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 a resource budget ran out.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from ._kernels import set_threads
from .cone import dd_facets, format_cone, read_cone, write_cone
from .lp import BudgetExceeded
from .pluecker import RatioVector, format_index
from .polynomial import TermCapExceeded
from .primitive import (
    basis_B,
    enumerate_primitives,
    basis_size_formula,
    outer_sets,
    primitive_cone,
    primitive_vectors,
    rank_G,
    relations,
)
from .raylab import (
    bundled_rays,
    format_ratio,
    parse_ratio_file,
    search_method_1,
    search_method_2,
    verify_ray,
    ws_graph,
    ws_isomorphic,
)
from .tropical import FSystem, build_F

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2


def _compact(s, n) -> str:
    if 2 * n <= 9:
        return "".join(str(x) for x in s)
    return format_index(s)


def _out_dir(args) -> Path | None:
    if args.out is None:
        return None
    p = Path(args.out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _emit(args, name: str, text: str) -> None:
    out = _out_dir(args)
    if out is not None:
        (out / name).write_text(text)


def cmd_primitives(args) -> int:
    prims = enumerate_primitives(args.n)
    lines = [str(p) for p in prims]
    print("\n".join(lines))
    print(f"count={len(prims)}")
    _emit(args, f"primitives_n{args.n}.txt", "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_relations(args) -> int:
    ids = {p: k + 1 for k, p in enumerate(enumerate_primitives(args.n))}
    lines = []
    for rel in relations(args.n):
        if not rel.holds():
            print(f"relation fails: {rel}", file=sys.stderr)
            return EXIT_FAIL
        lines.append(" ".join(str(ids[p]) for p in rel.specs))
    print("\n".join(lines))
    print(f"chains={len(lines)} equations={2 * len(lines)}")
    _emit(args, f"relations_n{args.n}.txt", "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_rank(args) -> int:
    res = rank_G(args.n)
    free = " ".join(_compact(s, args.n) for s in res.display_order(args.n))
    print(f"rank={res.rank} free=[{free}]")
    return EXIT_OK


def cmd_basis(args) -> int:
    from math import comb

    from ._linalg import rank
    basis = basis_B(args.n)
    print("\n".join(str(p) for p in basis))
    r = rank([p.vector().alpha for p in basis])
    target = comb(2 * args.n, args.n) - 2 * args.n
    print(f"size={len(basis)} rank={r} formula={basis_size_formula(args.n)} expected={target}")
    return EXIT_OK if len(basis) == r == target == basis_size_formula(args.n) else EXIT_FAIL


def cmd_facets(args) -> int:
    if args.n == 3:
        facets, outer = outer_sets(3)
        for o in outer:
            names = sorted(o.outer, key=lambda s: int(s[1:]))
            print(" ".join(str(x) for x in o.facet) + "  | outer={" + ", ".join(names) + "}")
        print(f"facets={len(facets.ineqs)} equalities={len(facets.eqs)}")
        _emit(args, "hull_n3.H", format_cone(facets))
        return EXIT_OK if all(o.one_sided and o.maximal for o in outer) else EXIT_FAIL
    facets = dd_facets(primitive_cone(args.n), args.budget_seconds)
    for a in facets.ineqs:
        print(" ".join(str(x) for x in a))
    print(f"facets={len(facets.ineqs)} equalities={len(facets.eqs)}")
    _emit(args, f"hull_n{args.n}.H", format_cone(facets))
    return EXIT_OK


def _load_F(args) -> FSystem:
    if getattr(args, "f_file", None):
        cone = read_cone(args.f_file)
        lam_path = Path(str(args.f_file) + ".lambda")
        lams = [tuple(int(x) for x in ln.split()) for ln in lam_path.read_text().splitlines() if ln.strip()]
        return FSystem(args.n, cone, lams, len(cone.ineqs), 0, lams)
    return build_F(args.n, args.budget_seconds)


def cmd_build_f(args) -> int:
    F = _load_F(args)
    print(f"n={args.n} variables={F.cone.dim} inequalities={len(F.cone.ineqs)} "
          f"equalities={len(F.cone.eqs)} raw_rows={F.raw_rows} fan_cells={F.cells} fan_rays={len(F.fan_rays)}")
    out = _out_dir(args)
    if out is not None:
        path = out / f"F{args.n}.H"
        write_cone(F.cone, path)
        Path(str(path) + ".lambda").write_text(F.sidecar())
    return EXIT_OK


def _report_lines(rep) -> list[str]:
    lines = [f"ratio: {rep.ratio}",
             f"st0: {'pass' if rep.st0['pass'] else 'fail ' + str(rep.st0['defects'])}",
             f"degree-balance: {'pass' if rep.degree_balance['pass'] else 'fail'}"]
    b = rep.bounded
    extra = f" witness={list(b['witness'])}" if b["witness"] else ""
    lines.append(f"bounded: {b['status']} ({b['mode']}){extra}")
    lines.append(f"primitive-cone: {rep.primitive_member['kind']} "
                 f"(verified={rep.primitive_member['verified']})")
    lines.append(f"extremal: {rep.extremal['status']}")
    sf = rep.subtraction_free
    lines.append(f"subtraction-free: {sf['status']}" + (f" ({sf['mode']})" if "mode" in sf else ""))
    return lines


def _check_ratios(args, ratios, label) -> int:
    F = _load_F(args) if args.mode == "exact" else None
    status = EXIT_OK
    reports = []
    for k, v in enumerate(ratios, 1):
        rep = verify_ray(v, F=F, k=args.k, seed=args.seed, term_cap=args.term_cap,
                         sf_mode=args.sf_mode)
        print(f"# {label} {k}")
        print("\n".join(_report_lines(rep)))
        reports.append(json.loads(rep.to_json()))
        bad = (not rep.st0["pass"] or not rep.degree_balance["pass"]
               or rep.bounded["status"] == "unbounded"
               or not rep.primitive_member["verified"]
               or (rep.subtraction_free["status"] not in ("unknown",) and not rep.subtraction_free["passed"]))
        if bad:
            status = EXIT_FAIL
    _emit(args, f"{label}_reports.json", json.dumps(reports, indent=2, sort_keys=True) + "\n")
    return status


def cmd_check(args) -> int:
    if not args.ratio_file:
        print("check needs --ratio-file", file=sys.stderr)
        return EXIT_FAIL
    ratios = parse_ratio_file(Path(args.ratio_file).read_text(), args.n)
    if not ratios:
        print(f"no ratio found in {args.ratio_file}", file=sys.stderr)
        return EXIT_FAIL
    return _check_ratios(args, ratios, "ratio")


def cmd_verify_rays(args) -> int:
    args.n = 4
    return _check_ratios(args, bundled_rays(), "ray")


def cmd_search(args) -> int:
    F = _load_F(args)
    if args.hull_file:
        P = read_cone(args.hull_file)
    else:
        P = dd_facets(primitive_cone(args.n), args.budget_seconds)
    if args.rounds > 0:
        res = search_method_2(F.cone, primitive_vectors(args.n), args.rounds, args.seed,
                              budget_seconds=args.budget_seconds)
    else:
        res = search_method_1(F.cone, P, args.seed, budget_seconds=args.budget_seconds,
                              generators=primitive_cone(args.n), max_facets=args.max_facets)
    print(f"status={res.status} missing_facets={len(res.missing_facets)} rays={len(res.rays)}")
    for r in res.rays:
        print(format_ratio(RatioVector(args.n, r)))
    if res.status == "budget":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_wsgraph(args) -> int:
    ratios = parse_ratio_file(Path(args.ratio_file).read_text(), args.n) if args.ratio_file else bundled_rays()
    graphs = [ws_graph(v) for v in ratios]
    for k, g in enumerate(graphs, 1):
        print(f"# graph {k}: vertices={g.number_of_nodes()} edges={g.number_of_edges()}")
        for u, w in sorted(g.edges):
            print(f"{format_index(u)} -- {format_index(w)}")
    if len(graphs) >= 2:
        for a in range(len(graphs)):
            for b in range(a + 1, len(graphs)):
                if ws_isomorphic(graphs[a], graphs[b]):
                    print(f"isomorphic: {a + 1} {b + 1}")
    return EXIT_OK


COMMANDS = {
    "primitives": cmd_primitives,
    "relations": cmd_relations,
    "rank": cmd_rank,
    "basis": cmd_basis,
    "facets": cmd_facets,
    "build-f": cmd_build_f,
    "check": cmd_check,
    "verify-rays": cmd_verify_rays,
    "search": cmd_search,
    "wsgraph": cmd_wsgraph,
}

SUPPORTED_N = {
    "primitives": (3, 4, 5), "relations": (3, 4), "rank": (3, 4, 5), "basis": (3, 4, 5),
    "facets": (3, 4), "build-f": (3, 4), "check": (3, 4), "verify-rays": (4,),
    "search": (3, 4), "wsgraph": (3, 4),
}


class _Parser(argparse.ArgumentParser):
    # usage errors count as failures; exit code 2 is reserved for budget aborts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAIL, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boundedratios",
                                     description="Bounded ratios of minors of totally positive matrices.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, default=4 if name == "verify-rays" else 3)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--mode", choices=("exact", "sampled"), default="sampled")
        p.add_argument("--k", type=int, default=10_000, help="sampled directions")
        p.add_argument("--budget-seconds", type=float, default=None)
        p.add_argument("--term-cap", type=int, default=10**7)
        p.add_argument("--out", default=None, help="directory for artifacts")
        p.add_argument("--ratio-file", default=None)
        p.add_argument("--f-file", default=None, help="precomputed F in H format (sidecar <file>.lambda)")
        p.add_argument("--hull-file", default=None, help="facets of the primitive hull in H format")
        p.add_argument("--rounds", type=int, default=0, help="method-2 rounds (0 = method 1)")
        p.add_argument("--max-facets", type=int, default=None,
                       help="method 1: flip at most this many missing hull facets, in seeded order")
        p.add_argument("--sf-mode", choices=("auto", "symbolic", "sampled"), default="auto")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n not in SUPPORTED_N[args.command]:
        parser.error(f"{args.command} supports n in {SUPPORTED_N[args.command]}")
    set_threads(args.threads)
    try:
        return COMMANDS[args.command](args)
    except (BudgetExceeded, TermCapExceeded) as exc:
        print(f"resource abort: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
