"""Per-thread task context consulted by approximation queries.

The race kernel installs a :class:`TaskContext` on the thread that is
advancing a task body.  Reals with a simulated cost call :func:`spend`
from inside ``approx``; outside any race the call is free.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from .errors import Cancelled

# Duration of one simulated unit of work.  A busy-step spins for one tick,
# a microsleep sleeps for one tick.
TICK_SECONDS = 5e-5

PARALLEL = "parallel"
INTERLEAVE = "interleave"


@dataclass
class TaskContext:
    mode: str
    cancel: threading.Event = field(default_factory=threading.Event)
    pending: int = 0


_local = threading.local()


def current() -> TaskContext | None:
    return getattr(_local, "ctx", None)


def install(ctx: TaskContext | None) -> None:
    _local.ctx = ctx


def poll() -> None:
    ctx = current()
    if ctx is not None and ctx.cancel.is_set():
        raise Cancelled()


def spend(cost: int) -> None:
    """Charge ``cost`` units of simulated work to the running task."""
    ctx = current()
    if ctx is None or cost <= 0:
        return
    ctx.pending += cost
    if ctx.mode == PARALLEL:
        # tick-sized sleeps against a deadline, so sleep overshoot does not
        # inflate the cost
        end = time.perf_counter() + cost * TICK_SECONDS
        while True:
            if ctx.cancel.is_set():
                raise Cancelled()
            left = end - time.perf_counter()
            if left <= 0:
                break
            time.sleep(min(TICK_SECONDS, left))
    else:
        busy_wait(cost * TICK_SECONDS)


def busy_wait(seconds: float) -> None:
    end = time.perf_counter() + seconds
    while time.perf_counter() < end:
        pass


def take_charge(ctx: TaskContext) -> int:
    """Steps charged for the task step just executed: max(1, simulated cost)."""
    charge = max(1, ctx.pending)
    ctx.pending = 0
    return charge
