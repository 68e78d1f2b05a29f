#!/usr/bin/env python3
"""Galois groups of random monic quintics with small coefficients.

Tallies labels and certificate modes; any inconsistent certificate set
aborts the run. Deterministic for a given --seed.

    python3 scripts/quintic_census.py --count 300 --height 6 --seed 1
"""
import argparse
import collections
import random

from endoatlas.exactmath import UniPoly
from endoatlas.numfield import Reducible, ZeroDiscriminant, quintic_galois


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--height", type=int, default=5, help="coefficient bound")
    ap.add_argument("--budget", type=int, default=100, help="primes per polynomial")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", action="store_true", help="print every non-S5 polynomial")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    tally = collections.Counter()
    skipped = 0
    while sum(tally.values()) < args.count:
        f = UniPoly([rng.randint(-args.height, args.height) for _ in range(5)] + [1])
        try:
            lab = quintic_galois(f, budget=args.budget, seed=args.seed)
        except (Reducible, ZeroDiscriminant):
            skipped += 1
            continue
        tally[(lab.label, lab.mode, lab.certificate["irreducible"])] += 1
        if args.show and lab.label != "S5":
            print(f"{lab.label:3} {lab.mode:11} {f}")
    for (label, mode, irr), n in sorted(tally.items()):
        print(f"{label:3} {mode:11} irreducibility {irr:9} {n}")
    print(f"skipped (rational root or repeated factor): {skipped}")


if __name__ == "__main__":
    main()
