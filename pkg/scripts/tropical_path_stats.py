"""How often each construction is used when connecting random tropical matrices.

Counts case branches, the route taken for distinct-diagonal endpoints, and
the distribution of path lengths.
"""
import argparse
import collections
import random

from commgraph.tropical_paths import BRANCHES, random_nonscalar, tropical_connect


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    for n in args.n:
        labels = collections.Counter()
        lengths = collections.Counter()
        for _ in range(args.pairs):
            X = random_nonscalar(rng, n, rng.choice(BRANCHES))
            Y = random_nonscalar(rng, n, rng.choice(BRANCHES))
            w = tropical_connect(X, Y)
            assert not w.problems()
            labels.update(w.branches)
            lengths[w.length] += 1
        print(f"n={n}  pairs={args.pairs}")
        for k, v in sorted(labels.items()):
            print(f"   {k:<24} {v}")
        print("   lengths " + ", ".join(f"{k}:{v}" for k, v in sorted(lengths.items())))


if __name__ == "__main__":
    main()
