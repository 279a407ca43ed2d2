"""Exact rational arithmetic, the ground field for every approximation.

``Rational`` is :class:`fractions.Fraction`, which stores values normalized
(positive denominator, coprime numerator) at construction time.  The helper
functions below give the operations names and error behaviour used across
the package.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction

from .errors import DivisionByZero, ParseError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def rat_sub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise DivisionByZero(f"division of {a} by zero")
    return a / b


def rat_neg(a: Fraction) -> Fraction:
    return -a


def rat_abs(a: Fraction) -> Fraction:
    return abs(a)


def rat_cmp(a: Fraction, b: Fraction) -> Ordering:
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def dyadic(n: int) -> Fraction:
    """Return 2^-n exactly."""
    if n < 0:
        raise ValueError(f"precision index must be >= 0, got {n}")
    return Fraction(1, 1 << n)


def bit_size(q: Fraction) -> int:
    """Larger of the numerator and denominator bit lengths."""
    return max(abs(q.numerator).bit_length(), q.denominator.bit_length())


def ceil_log2(q: Fraction) -> int:
    """Smallest integer e with 2^e >= q, for q > 0."""
    if q <= 0:
        raise ValueError("ceil_log2 needs a positive argument")
    p, d = q.numerator, q.denominator
    e = p.bit_length() - d.bit_length()
    # 2^(e-1) < p/d < 2^(e+1); settle the boundary exactly
    while Fraction(2) ** e < q:
        e += 1
    while Fraction(2) ** (e - 1) >= q:
        e -= 1
    return e


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (sign allowed on p only)."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
