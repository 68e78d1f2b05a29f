#!/usr/bin/env python3
"""Scan imaginary quadratic fields: class numbers, and for which cyclic
2-torsion orders p the coprimality hypothesis holds.

    python3 scripts/heegner_scan.py --bound 300 --primes 5 7 11
"""
import argparse
import csv
import sys

from endoatlas.endoclass import HypothesisFailure, classify_cp
from endoatlas.exactmath import is_squarefree
from endoatlas.numfield import class_number_imag


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--bound", type=int, default=200, help="scan -bound < d < 0")
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7])
    args = ap.parse_args(argv)

    out = csv.writer(sys.stdout)
    out.writerow(["d", "h", *[f"p={p}" for p in args.primes]])
    ones = []
    for d in range(-1, -args.bound, -1):
        if not is_squarefree(-d):
            continue
        h = class_number_imag(d)
        if h == 1:
            ones.append(d)
        row = [d, h]
        for p in args.primes:
            try:
                classify_cp((p - 1) // 2, d)
                row.append("ok")
            except HypothesisFailure:
                row.append("fails")
        out.writerow(row)
    print(f"# class number one: {sorted(ones)}", file=sys.stderr)


if __name__ == "__main__":
    main()
