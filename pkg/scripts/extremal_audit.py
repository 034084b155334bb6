"""Audit the extremal constructions: tightness, cover bound and proof objects, plus the K_{3,3,3} example."""

import argparse
import json
import sys
import time
from fractions import Fraction

from homtile.audits import audit_extremal_tiling, audit_k333
from homtile.experiments import EXTREMAL_CASES, run_extremal_case


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--time-budget-secs", type=int, default=120)
    args = ap.parse_args(argv)

    rows, ok = [], True
    for case in EXTREMAL_CASES:
        t0 = time.perf_counter()
        spec, h, _ = case.build()
        audit = audit_extremal_tiling(spec, h, time_budget=args.time_budget_secs)
        rec = run_extremal_case(case)
        good = audit.ok and rec.bound_status == "ok" and rec.proof_objects_ok
        ok &= good
        rows.append({"r": case.r, "H": case.pattern, "x": str(case.x), "n": case.n,
                     "sizes": list(rec.sizes), "tiling": audit.tiling_number, "cover": str(rec.cover),
                     "xn": str(rec.xn), "proof_objects": rec.proof_objects_ok, "ok": good,
                     "seconds": round(time.perf_counter() - t0, 2)})
    t0 = time.perf_counter()
    k = audit_k333(Fraction(1, 10), 20, time_budget=args.time_budget_secs)
    ok &= k.ok
    k333 = {**k.to_json(), "seconds": round(time.perf_counter() - t0, 2)}
    del k333["tiling"]

    if args.json:
        print(json.dumps({"extremal": rows, "k333": k333}, indent=2))
    else:
        print(f"{'r':>2} {'H':<10} {'x':>5} {'n':>3}  sizes            tiling cover xn  proof  ok")
        for r in rows:
            print(f"{r['r']:>2} {r['H']:<10} {r['x']:>5} {r['n']:>3}  {str(r['sizes']):<16} "
                  f"{r['tiling']:>6} {r['cover']:>5} {r['xn']:>2}  {str(r['proof_objects']):<5}  {r['ok']}")
        print(f"K_{{3,3,3}} example x=1/10 n=20: {k333['high_degree_count']} vertices of degree >= "
              f"{k333['delta']}, tiling number {k333['tiling_number']} < xn = {k333['xn']}: {k333['ok']}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
