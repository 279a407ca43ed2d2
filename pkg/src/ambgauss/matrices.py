"""Seeded matrix families used by the CLI, the experiment scripts and tests."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import SingularMatrix
from .formats import Entry, MatrixSpec
from .gauss import RationalMatrix, oracle_invert


def random_rational(rng: random.Random, num_bits: int = 10, den_bits: int = 10) -> Fraction:
    """Uniform numerator in [-2^num_bits, 2^num_bits], denominator in [1, 2^den_bits]."""
    return Fraction(rng.randint(-(1 << num_bits), 1 << num_bits), rng.randint(1, 1 << den_bits))


def is_singular(rows) -> bool:
    try:
        oracle_invert(RationalMatrix.of(rows))
    except SingularMatrix:
        return True
    return False


def random_nonsingular(rng: random.Random, n: int, num_bits: int = 10, den_bits: int = 10) -> list[list[Fraction]]:
    while True:
        rows = [[random_rational(rng, num_bits, den_bits) for _ in range(n)] for _ in range(n)]
        if not is_singular(rows):
            return rows


def random_integer_matrix(rng: random.Random, n: int, bits: int = 64) -> list[list[Fraction]]:
    """Entries uniform over signed ``bits``-bit integers, nonzero."""
    lo, hi = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    while True:
        rows = [[Fraction(rng.randint(lo, hi) or 1) for _ in range(n)] for _ in range(n)]
        if not is_singular(rows):
            return rows


def with_tiny_entries(rng: random.Random, rows: list[list[Fraction]], count: int, exponent: int = 30) -> list[list[Fraction]]:
    """Overwrite ``count`` random positions with 2^-exponent, keeping the matrix non-singular."""
    n = len(rows)
    while True:
        out = [list(r) for r in rows]
        for pos in rng.sample(range(n * n), count):
            out[pos // n][pos % n] = Fraction(1, 1 << exponent)
        if not is_singular(out):
            return out


def hard_pivot_matrix(
    rng: random.Random,
    n: int,
    cheap_cost: int = 1,
    heavy_cost: int = 100,
    tiny_exponents: tuple[int, int] = (20, 28),
) -> MatrixSpec:
    """Diagonally dominant matrix where each column i >= 2 offers two pivots.

    Row i holds a large entry that is cheap to approximate; row i-1 holds a
    tiny entry 2^-s that is expensive.  Remaining off-diagonal entries are
    small cheap rationals, so every row is strictly diagonally dominant.
    """
    rows: list[list[Entry]] = []
    for k in range(n):
        row = []
        for l in range(n):
            if k == l:
                row.append(Entry(Fraction(rng.randint(n + 2, n + 6)), cheap_cost))
            elif l == k + 1:
                s = rng.randint(*tiny_exponents)
                row.append(Entry(Fraction(1, 1 << s), heavy_cost))
            else:
                row.append(Entry(Fraction(rng.randint(-4, 4), 8), cheap_cost))
        rows.append(row)
    return MatrixSpec(tuple(tuple(r) for r in rows))


def fast_slow_pair(fast_cost: int = 1, slow_cost: int = 100) -> tuple[Entry, Entry]:
    """Two pivot candidates: 1/4 needs 5 search steps, 2^-22 needs 25."""
    return Entry(Fraction(1, 4), fast_cost), Entry(Fraction(1, 1 << 22), slow_cost)
