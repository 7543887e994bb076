#!/usr/bin/env python3
"""Tabulate the base-curvature interval with positive scalar curvature.

For a selection of metric parameters, bisect the maximal open interval of
space-form curvatures c around 0 for which the scalar curvature of the lifted
metric stays positive over the whole (ball) bundle.

Usage: python scripts/positivity_intervals.py
"""

import math

from cgm.regions import scalar_positivity_interval
from cgm.scalars import Params

CASES = [
    (1, 1), (1, 0), (2, 0), (1, 2), (2, 1), (3, 2), (2, -1), (3, -2),
]


def main() -> int:
    print(f"{'p':>5} {'q':>5} {'n':>2} {'c_lo':>12} {'c_hi':>12}")
    for p, q in CASES:
        for n in (2, 3):
            try:
                lo, hi = scalar_positivity_interval(Params(p, q), n)
            except ValueError:
                print(f"{p:>5} {q:>5} {n:>2} {'outside supported family':>25}")
                continue
            if math.isnan(lo):
                print(f"{p:>5} {q:>5} {n:>2} {'not positive at c=0':>25}")
                continue
            print(f"{p:>5} {q:>5} {n:>2} {lo:>12.6f} {hi:>12.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
