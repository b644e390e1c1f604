#!/usr/bin/env python3
"""Emit the Method One vs Method Two comparison CSVs for the default regions.

Produces comparison_<M>x<N>.csv files (schema k,l_exact,T1,T2,T3,T4,sign)
for (100,50), (100,100) and (1000,100), ready for the plots package:

  python scripts/emit_comparison_curves.py --out-dir data/
  python -m eggdrop_plots --csv data/comparison_100x50.csv --out l_curve.svg
"""

import argparse
import os
import sys

from eggdrop.analysis import DEFAULT_SWEEP, crossover_k, emit_comparison_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default=".")
    parser.add_argument("--k-min", type=int, default=2)
    parser.add_argument("--k-max", type=int, default=40)
    args = parser.parse_args()

    os.makedirs(args.out_dir, exist_ok=True)
    for m, n in DEFAULT_SWEEP:
        path = os.path.join(args.out_dir, f"comparison_{m}x{n}.csv")
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(emit_comparison_csv(m, n, args.k_min, args.k_max))
        cross = crossover_k(m, n, args.k_max)
        print(f"{path}  (method two first wins at k={cross})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
