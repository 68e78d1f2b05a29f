#!/usr/bin/env python3
"""Verdicts for QM surfaces over every admissible presentation (D/m, m)
with D up to a bound: closed-form orders, twist norms, and the mod-2
kernel, as one JSON line per algebra.

    python3 scripts/qm_survey.py --max-D 100
"""
import argparse
import json

from endoatlas import quatorder as qo
from endoatlas.exactmath import divisors, is_squarefree


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-D", type=int, default=70)
    args = ap.parse_args(argv)

    for D in range(2, args.max_D + 1):
        if not is_squarefree(D):
            continue
        for m in divisors(D):
            try:
                v = qo.qm_endo_verdict(D, m)
            except (qo.PresentationMismatch, qo.CongruenceOutOfScope):
                continue
            row = {"D": D, "m": m, "case": v.case, "result": v.result, "twist_norm": v.twist_norm,
                   "candidates": list(v.candidates),
                   "trivial_mod2": {k.order: list(k.trivial_mod2) for k in v.kernels}}
            print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
