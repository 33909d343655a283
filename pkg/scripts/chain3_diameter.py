"""Exact diameter of the commuting graph of 3x3 matrices over the chain C_3.

Writes the value, the vertex count and a realizing shortest path to
artifacts/chain3_n3_diameter.json (about a minute on one core).
"""
import json
import pathlib
import time

from commgraph.graph import build_graph, diameter, matrix_label
from commgraph.semiring import chain

OUT = pathlib.Path(__file__).resolve().parent.parent / "artifacts" / "chain3_n3_diameter.json"


def main():
    t0 = time.perf_counter()
    g = build_graph(chain(3), 3)
    d = diameter(g)
    record = {
        "semiring": "chain:3",
        "n": 3,
        "vertices": len(g),
        "diameter": int(d.value) if d.finite else "inf",
        "path": [matrix_label(A) for A in d.witness_path or []],
        "seconds": round(time.perf_counter() - t0, 1),
    }
    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(json.dumps(record, indent=2) + "\n")
    print(json.dumps(record, indent=2))


if __name__ == "__main__":
    main()
