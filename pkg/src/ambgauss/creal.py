"""Constructive reals given by fast Cauchy sequences.

A :class:`CReal` is anything with ``approx(n)`` returning a rational within
2^-n of the real it denotes.  Three representations are offered: plain
functions, memoized streams and signed-digit streams, together with the
field operations (inversion needs an apartness witness).

Precision budgets used by the operations::

    add/sub   approx(n) = x(n+1) +- y(n+1)
    mul       approx(n) = x(n+ky+1) * y(n+kx+1),  kx = ceil(log2(|x(0)|+1)) + 1
    inv       approx(n) = 1 / x(n+2k+2),          given |x| >= 2^-k

For mul, |x| <= 2^(kx-1) and |y| <= 2^(ky-1), so |xy - ab| is at most
2^-(n+2) + 2^-(n+2) + 2^-(2n+4) < 2^-n.  For inv, |q| > 2^-(k+1) once the
witness holds, so |1/x - 1/q| <= 2^-(n+2k+2) / 2^-(2k+1) = 2^-(n+1).
"""

from __future__ import annotations

import bisect
import enum
import itertools
import threading
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import _runtime
from .errors import DomainViolation, WitnessViolation
from .rational import ceil_log2, dyadic


class Repr(enum.Enum):
    FUNCTION = "function"
    MEMO_STREAM = "memo-stream"
    SIGNED_DIGIT = "signed-digit"
    EXACT_RATIONAL = "exact-rational"


class CReal:
    """A real number presented by its rational approximations."""

    __slots__ = ("_fn", "repr_tag", "_doubling")

    def __init__(self, fn: Callable[[int], Fraction], repr_tag: Repr = Repr.FUNCTION):
        self._fn = fn
        self.repr_tag = repr_tag
        # (base, t) when this real is base doubled t times via cr_add(x, x)
        self._doubling: tuple[CReal, int] | None = None

    def approx(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError(f"precision index must be >= 0, got {n}")
        return self._fn(n)

    def __add__(self, other: CReal) -> CReal:
        return cr_add(self, other)

    def __sub__(self, other: CReal) -> CReal:
        return cr_sub(self, other)

    def __mul__(self, other: CReal) -> CReal:
        return cr_mul(self, other)

    def __neg__(self) -> CReal:
        return cr_neg(self)

    def __repr__(self) -> str:
        return f"<CReal {self.repr_tag.value}>"


def from_rational(q: Fraction | int) -> CReal:
    q = Fraction(q)
    return CReal(lambda n: q, Repr.EXACT_RATIONAL)


def pow2(e: int) -> CReal:
    """The exact real 2^e (e may be negative)."""
    return from_rational(Fraction(2) ** e)


def delayed(q: Fraction | int, cost: int) -> CReal:
    """The rational q, with ``cost`` units of simulated work per query.

    Inside a race the cost is paid as busy-steps (interleave mode) or as
    cancellable microsleeps (parallel mode).  Outside a race it is free.
    """
    q = Fraction(q)
    cost = int(cost)
    if cost < 0:
        raise ValueError("cost must be >= 0")

    def fn(n: int) -> Fraction:
        _runtime.spend(cost)
        return q

    return CReal(fn, Repr.FUNCTION)


def cr_add(x: CReal, y: CReal) -> CReal:
    if x is y:
        return _double(x)
    return CReal(lambda n: x.approx(n + 1) + y.approx(n + 1))


def _double(x: CReal) -> CReal:
    # t-fold self-addition collapses to 2^t * base(n+t), the same values the
    # nested formula produces, without nesting t closures
    base, t = x._doubling if x._doubling is not None else (x, 0)
    t += 1
    scale = 1 << t
    r = CReal(lambda n: scale * base.approx(n + t))
    r._doubling = (base, t)
    return r


def cr_sub(x: CReal, y: CReal) -> CReal:
    return CReal(lambda n: x.approx(n + 1) - y.approx(n + 1))


def cr_neg(x: CReal) -> CReal:
    return CReal(lambda n: -x.approx(n))


def _magnitude_exponent(x: CReal) -> int:
    return ceil_log2(abs(x.approx(0)) + 1) + 1


def cr_mul(x: CReal, y: CReal) -> CReal:
    exps: list[int] = []

    def fn(n: int) -> Fraction:
        if not exps:
            exps[:] = [_magnitude_exponent(x), _magnitude_exponent(y)]
        kx, ky = exps
        return x.approx(n + ky + 1) * y.approx(n + kx + 1)

    return CReal(fn)


def cr_inv(x: CReal, k) -> CReal:
    """1/x, where ``k`` (an int or a Witness) guarantees |x| >= 2^-k."""
    k = int(getattr(k, "k", k))
    if k < 0:
        raise ValueError("witness must be >= 0")
    floor = dyadic(k + 1)

    def fn(n: int) -> Fraction:
        q = x.approx(n + 2 * k + 2)
        if abs(q) < floor:
            raise WitnessViolation(f"|x| >= 2^-{k} is false: approx is {q}")
        return 1 / q

    return CReal(fn)


def cr_div(x: CReal, y: CReal, k) -> CReal:
    return cr_mul(x, cr_inv(y, k))


class MemoStream(CReal):
    """A real whose approximations are cached, write-once, across threads.

    A query at precision n is answered by the cached entry at n if present,
    otherwise by the closest cached entry at a higher precision (which is
    then also recorded at n), otherwise by the underlying real.
    """

    __slots__ = ("_source", "_lock", "_cache", "_keys", "computed")

    def __init__(self, source: CReal):
        super().__init__(self._lookup, Repr.MEMO_STREAM)
        self._source = source
        self._lock = threading.Lock()
        self._cache: dict[int, Fraction] = {}
        self._keys: list[int] = []
        self.computed = 0

    def _store(self, n: int, q: Fraction) -> Fraction:
        # caller holds the lock
        prev = self._cache.get(n)
        if prev is not None:
            return prev
        self._cache[n] = q
        bisect.insort(self._keys, n)
        return q

    def _lookup(self, n: int) -> Fraction:
        with self._lock:
            hit = self._cache.get(n)
            if hit is not None:
                return hit
            i = bisect.bisect_left(self._keys, n)
            if i < len(self._keys):
                return self._store(n, self._cache[self._keys[i]])
        q = self._source.approx(n)
        with self._lock:
            self.computed += 1
            return self._store(n, q)

    def cached(self) -> dict[int, Fraction]:
        with self._lock:
            return dict(self._cache)


def to_memo_stream(x: CReal) -> CReal:
    if isinstance(x, MemoStream):
        return x
    return MemoStream(x)


class SignedDigitStream:
    """Lazy infinite digit sequence over {-1, 0, 1}; digits are 1-indexed."""

    def __init__(self, digits: Iterable[int]):
        self._source: Iterator[int] = iter(digits)
        self._digits: list[int] = []
        self._error: BaseException | None = None
        self._lock = threading.Lock()

    @classmethod
    def eventually(cls, prefix: Iterable[int], tail: int = 0) -> SignedDigitStream:
        return cls(itertools.chain(prefix, itertools.repeat(tail)))

    def digit(self, i: int) -> int:
        if i < 1:
            raise IndexError("signed digits are indexed from 1")
        with self._lock:
            while len(self._digits) < i:
                if self._error is not None:
                    raise self._error
                try:
                    d = next(self._source)
                except StopIteration:
                    raise ValueError("signed digit stream ended") from None
                except Exception as exc:
                    self._error = exc
                    raise
                if d not in (-1, 0, 1):
                    raise ValueError(f"invalid signed digit {d!r}")
                self._digits.append(d)
            return self._digits[i - 1]

    def take(self, n: int) -> list[int]:
        return [self.digit(i) for i in range(1, n + 1)]

    def __iter__(self) -> Iterator[int]:
        for i in itertools.count(1):
            yield self.digit(i)


def partial_sum(digits: Iterable[int]) -> Fraction:
    return sum((Fraction(d, 1 << i) for i, d in enumerate(digits, 1)), Fraction(0))


_QUARTER = Fraction(1, 4)
_DOMAIN_LIMIT = Fraction(5, 4)


def to_signed_digit(x: CReal) -> SignedDigitStream:
    """Signed-digit expansion of x in [-1, 1].

    After m digits the remaining real is 2^m x - c with c an integer, so its
    probe at precision 2 is 2^m x(m+2) - c.
    """

    def digits() -> Iterator[int]:
        m, c = 0, 0
        while True:
            q = (x.approx(m + 2) * (1 << m)) - c
            if abs(q) > _DOMAIN_LIMIT:
                raise DomainViolation(f"approximation {q} shows the value lies outside [-1, 1]")
            if q <= -_QUARTER:
                d = -1
            elif q >= _QUARTER:
                d = 1
            else:
                d = 0
            yield d
            c = 2 * c + d
            m += 1

    return SignedDigitStream(digits())


def from_signed_digit(s: SignedDigitStream) -> CReal:
    def fn(n: int) -> Fraction:
        return partial_sum(s.take(n))

    return CReal(fn, Repr.SIGNED_DIGIT)
