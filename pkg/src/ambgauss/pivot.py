"""Concurrent pivot selection: race witness searches over candidate entries."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .conc import RaceResult, Scheduler, race
from .creal import CReal
from .witness import Witness, phi1_steps


@dataclass(frozen=True)
class PivotResult:
    index: int  # 1-based position in the candidate list
    witness: Witness
    race: RaceResult | None = field(default=None, compare=False, repr=False)


def search_body(x: CReal, fuel: int | None = None):
    return lambda: phi1_steps(x, fuel)


def pivotN(xs: Sequence[CReal], sched: Scheduler | None = None, fuel: int | None = None) -> PivotResult:
    """Find some entry apart from zero, racing one witness search per entry.

    Requires that not all entries are zero; otherwise the race blocks, or
    raises AllTasksExhausted when ``fuel`` is set.
    """
    if len(xs) < 1:
        raise ValueError("pivot search needs at least one candidate")
    res = race([search_body(x, fuel) for x in xs], sched)
    return PivotResult(res.winner_id, res.value, res)


def pivot2(x: CReal, y: CReal, sched: Scheduler | None = None, fuel: int | None = None) -> PivotResult:
    return pivotN([x, y], sched, fuel)


def pivot_interleaved(xs: Sequence[CReal], fuel: int | None = None) -> PivotResult:
    """Single-threaded baseline: searches advance one query each per round."""
    return pivotN(xs, Scheduler.interleave(1), fuel)
