"""Diameter, component sizes and a longest shortest path for small matrix semirings.

    python scripts/diameter_sweep.py                 # default sweep
    python scripts/diameter_sweep.py chain:3:2 modular:9:2
"""
import argparse
import json
import time

from commgraph.graph import build_graph, component_indices, diameter, matrix_label
from commgraph.semiring import builtin_semiring

DEFAULT = ["boolean:2", "boolean:3", "modular:2:2", "modular:3:2", "modular:4:2",
           "modular:6:2", "chain:3:2", "chain:4:2"]


def run(target: str) -> dict:
    name, _, n = target.rpartition(":")
    S, n = builtin_semiring(name), int(n)
    t0 = time.perf_counter()
    g = build_graph(S, n)
    d = diameter(g)
    sizes = sorted(len(c) for c in component_indices(g))
    return {
        "semiring": S.name,
        "n": n,
        "vertices": len(g),
        "diameter": "inf" if not d.finite else int(d.value),
        "components": sizes,
        "path": [matrix_label(A) for A in d.witness_path] if d.witness_path else None,
        "seconds": round(time.perf_counter() - t0, 2),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("targets", nargs="*", default=DEFAULT, help="semiring:n, e.g. chain:3:2")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [run(t) for t in args.targets]
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        print(f"{r['semiring']:>10} n={r['n']}  V={r['vertices']:<6} diam={r['diameter']:<4} "
              f"components={r['components'] if len(r['components']) < 6 else len(r['components'])}  "
              f"({r['seconds']}s)")
        if r["path"]:
            print("            " + " - ".join(r["path"]))


if __name__ == "__main__":
    main()
