"""Best-effort n=4 pipeline: F_4 from the fan walk, reduction, extremality of
the bundled rays and a method-1 search.  Artifacts go to --out.

    python3 benchmarks/stretch_n4.py --out /tmp/stretch
"""
import argparse
import json
import pickle
import time
from pathlib import Path

from boundedratios.cone import (
    ConeV, cone_dimension, dd_facets, extremality_test, member_v, read_cone, reduce, write_cone,
)
from boundedratios.primitive import primitive_cone
from boundedratios.raylab import bundled_rays, orbit, search_method_1
from boundedratios.tropical import build_F


def log(msg):
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", flush=True)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--hull-budget", type=float, default=3600)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tries", type=int, default=3)
    ap.add_argument("--max-facets", type=int, default=5, help="missing hull facets to flip (0 = all)")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stats = {}

    raw_path = out / "F4_raw.H"
    if raw_path.exists():
        raw = read_cone(raw_path)
        lams = [tuple(map(int, ln.split())) for ln in (out / "F4_raw.H.lambda").read_text().splitlines()]
        stats.update(json.loads((out / "stats.json").read_text()))
    else:
        t = time.monotonic()
        F = build_F(4, reduced=False)
        stats.update(fan_cells=F.cells, fan_rays=len(F.fan_rays), raw_rows=F.raw_rows,
                     walk_seconds=round(time.monotonic() - t, 1))
        raw, lams = F.cone, F.lambdas
        write_cone(raw, raw_path)
        (out / "F4_raw.H.lambda").write_text(F.sidecar())
        (out / "stats.json").write_text(json.dumps(stats, indent=2))
    log(f"raw F_4: {len(raw.ineqs)} rows, {len(raw.eqs)} equalities; {stats}")

    t = time.monotonic()
    red = reduce(raw, certificates=True)
    stats["reduce_seconds"] = round(time.monotonic() - t, 1)
    F4 = red.cone
    # every removed row carries an exactly checked combination of the kept rows
    kept = ConeV(F4.dim, F4.ineqs, F4.eqs)
    stats["removed"] = len(red.removed)
    stats["removed_certified"] = all(member_v(r, kept).member for r, _, _ in red.removed)
    stats["irredundant_rows"] = len(F4.ineqs)
    stats["equalities"] = len(F4.eqs)
    write_cone(F4, out / "F4.H")
    lam_of = dict(zip(raw.ineqs, lams))
    (out / "F4.H.lambda").write_text("\n".join(" ".join(map(str, lam_of[r])) for r in F4.ineqs) + "\n")
    stats["dimension"] = cone_dimension(F4)
    log(f"reduced F_4: {stats}")

    rays = bundled_rays()
    stats["rays_in_F"] = [F4.contains(v.alpha) for v in rays]
    stats["rays_extremal"] = [F4.contains(v.alpha) and extremality_test(v.alpha, F4) for v in rays]
    hull = primitive_cone(4)
    stats["primitives_extremal"] = sum(extremality_test(g, F4) for g in hull.rays)
    (out / "stats.json").write_text(json.dumps(stats, indent=2))
    log(f"extremality: {stats['rays_extremal']} primitives extremal: {stats['primitives_extremal']}")

    hull_path = out / "P4.H"
    if hull_path.exists():
        P = read_cone(hull_path)
    else:
        t = time.monotonic()
        try:
            P = dd_facets(hull, args.hull_budget)
        except Exception as exc:  # budget
            stats["hull"] = f"aborted after {time.monotonic() - t:.0f}s: {exc}"
            (out / "stats.json").write_text(json.dumps(stats, indent=2))
            log(stats["hull"])
            return
        write_cone(P, hull_path)
    stats["hull_facets"] = len(P.ineqs)
    log(f"hull facets {len(P.ineqs)}")
    t = time.monotonic()
    res = search_method_1(F4, P, seed=args.seed, tries=args.tries, generators=hull,
                          max_facets=args.max_facets or None)
    orbits = {}
    for k, v in enumerate(rays, 1):
        for w in orbit(v):
            orbits[w.alpha] = k
    stats["method1"] = {"status": res.status, "missing_facets": len(res.missing_facets),
                        "rays": len(res.rays), "bundled_orbit_hits": sorted({orbits[r] for r in res.rays if r in orbits}),
                        "separators_verified": all(
                            sum(a * b for a, b in zip(h, r)) > 0 for h, r in zip(res.separators, res.rays)),
                        "seconds": round(time.monotonic() - t, 1)}
    (out / "stats.json").write_text(json.dumps(stats, indent=2))
    with open(out / "method1.pkl", "wb") as fh:
        pickle.dump(res, fh)
    log(f"method 1: {stats['method1']}")


if __name__ == "__main__":
    main()
