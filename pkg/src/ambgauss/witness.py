"""Apartness witnesses: the doubling search for k with |x| >= 2^-k.

The search is an instance of Archimedean recursion: a step either finishes
with a value or asks to be re-run on the doubled argument and names a
transform to apply to whatever that run returns.  Both the combinator and
the witness search come in two forms: a generator that yields once per
step (what the race kernel drives) and a plain function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Generator, Generic, TypeVar

from .creal import CReal, cr_add
from .errors import FuelExhausted

S = TypeVar("S")
V = TypeVar("V")

Steps = Generator[None, None, V]


@dataclass(frozen=True)
class Witness:
    """k certifying |x| >= 2^-k."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("witness must be a natural number")

    def bound(self) -> Fraction:
        return Fraction(1, 1 << self.k)


@dataclass(frozen=True)
class Done(Generic[V]):
    value: V


@dataclass(frozen=True)
class Continue(Generic[V]):
    transform: Callable[[V], V]


StepOutcome = Done | Continue


def iter_archimedean_rec(
    step: Callable[[S], StepOutcome],
    double: Callable[[S], S],
    s0: S,
    fuel: int | None = None,
) -> Steps[Any]:
    """Run ``chi a = case step a of Done b -> b; Continue f -> f (chi (double a))``.

    Yields after every step that continues; ``fuel`` caps the number of
    step evaluations.
    """
    transforms: list[Callable] = []
    state = s0
    calls = 0
    while True:
        if fuel is not None and calls >= fuel:
            raise FuelExhausted(f"no result after {calls} steps")
        outcome = step(state)
        calls += 1
        if isinstance(outcome, Done):
            value = outcome.value
            for f in reversed(transforms):
                value = f(value)
            return value
        transforms.append(outcome.transform)
        yield
        state = double(state)


def drive(steps: Steps[V]) -> tuple[V, int]:
    """Run a step generator to completion; return (result, steps taken)."""
    n = 1
    try:
        while True:
            next(steps)
            n += 1
    except StopIteration as stop:
        return stop.value, n


def archimedean_rec(step, double, s0, fuel: int | None = None):
    return drive(iter_archimedean_rec(step, double, s0, fuel))[0]


_THRESHOLD = 2


def _succ(k: int) -> int:
    return k + 1


def phi1_step(x: CReal) -> StepOutcome:
    if abs(x.approx(0)) > _THRESHOLD:
        return Done(0)
    return Continue(_succ)


def mult2(x: CReal) -> CReal:
    return cr_add(x, x)


def phi1_steps(x: CReal, fuel: int | None = None) -> Steps[Witness]:
    """Step-wise witness search; one approximation query per step.

    Diverges (or exhausts ``fuel``) when x = 0.
    """
    k = yield from iter_archimedean_rec(phi1_step, mult2, x, fuel)
    return Witness(k)


def phi1(x: CReal, fuel: int | None = None) -> Witness:
    return drive(phi1_steps(x, fuel))[0]
