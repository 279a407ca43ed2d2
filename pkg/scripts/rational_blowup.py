"""Coefficient growth of exact rational Gauss-Jordan elimination.

Prints the bit-size profile of [A | E] column by column for random
integer matrices, and over a range of seeds how often the size after
column 3 reaches 4x the input size.

    python3 scripts/rational_blowup.py --dim 6 --bits 64 --seeds 40
"""

import argparse
import random

from ambgauss.gauss import RationalMatrix, bit_size_profile
from ambgauss.matrices import random_integer_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=6)
    ap.add_argument("--bits", type=int, default=64)
    ap.add_argument("--seeds", type=int, default=40)
    ap.add_argument("--column", type=int, default=3)
    args = ap.parse_args()

    ratios = []
    for seed in range(args.seeds):
        prof = bit_size_profile(RationalMatrix.of(random_integer_matrix(random.Random(seed), args.dim, args.bits)))
        ratios.append(prof[args.column] / prof[0])
        if seed < 5:
            print(f"seed {seed}: {prof}")
    hits = sum(r >= 4 for r in ratios)
    print(f"column {args.column} / input: min {min(ratios):.3f}  max {max(ratios):.3f}  mean {sum(ratios) / len(ratios):.3f}")
    print(f"{hits}/{args.seeds} seeds reach 4x")


if __name__ == "__main__":
    main()
