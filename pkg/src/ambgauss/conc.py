"""Racing partial computations, and process trees built from races.

Task bodies are zero-argument callables.  A body that returns a generator
is a stepwise computation: every ``yield`` is a checkpoint where the
kernel may cancel it or, in interleave mode, switch to another task, and
the generator's return value is the task's result.  A body returning
anything else completes in one step.

``race`` returns the first task to complete and cancels the rest.  In
parallel mode each worker thread advances its tasks until the race is
decided; in interleave mode tasks are advanced round-robin on the calling
thread, which makes the winner a function of step counts alone.

A process tree (``Amb``) is a node of at most n child bodies, each
producing ``Leaf(value)`` or ``Continue(thunk)``.  Evaluation races the
children of a node, stops at a Leaf, or builds and descends into the
winning Continue's subtree; losing branches are never revisited.
"""

from __future__ import annotations

import inspect
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Generator, Sequence

from . import _runtime
from .errors import AllTasksExhausted, Cancelled, FuelExhausted

PARALLEL = _runtime.PARALLEL
INTERLEAVE = _runtime.INTERLEAVE

Body = Callable[[], Any]


@dataclass(frozen=True)
class Scheduler:
    mode: str = PARALLEL
    step_budget: int = 1
    threads: int | None = None

    def __post_init__(self):
        if self.mode not in (PARALLEL, INTERLEAVE):
            raise ValueError(f"unknown scheduler mode {self.mode!r}")
        if self.step_budget < 1:
            raise ValueError("step budget must be >= 1")
        if self.threads is not None and self.threads < 1:
            raise ValueError("worker cap must be >= 1")

    @classmethod
    def parallel(cls, threads: int | None = None) -> Scheduler:
        return cls(PARALLEL, threads=threads)

    @classmethod
    def interleave(cls, step_budget: int = 1) -> Scheduler:
        return cls(INTERLEAVE, step_budget=step_budget)


@dataclass(frozen=True)
class RaceResult:
    winner_id: int
    value: Any
    # counted steps per task, in task-id order
    steps: tuple[int, ...]
    rounds: int | None = None

    @property
    def winner_steps(self) -> int:
        return self.steps[self.winner_id - 1]

    @property
    def total_steps(self) -> int:
        return sum(self.steps)


@dataclass
class RaceTask:
    id: int
    body: Body
    ctx: _runtime.TaskContext
    steps: int = 0
    gen: Generator | None = None

    def start(self) -> None:
        self.gen = _as_steps(self.body)

    def advance(self) -> None:
        """One step; StopIteration carries the result."""
        _runtime.install(self.ctx)
        try:
            next(self.gen)
        finally:
            self.steps += _runtime.take_charge(self.ctx)
            _runtime.install(None)

    def close(self) -> None:
        if self.gen is not None:
            self.gen.close()


def _as_steps(body: Body):
    out = body()
    if inspect.isgenerator(out):
        return (yield from out)
    return out


_live_lock = threading.Lock()
_live = 0


def live_workers() -> int:
    """Worker threads started by ``race`` that have not yet exited."""
    with _live_lock:
        return _live


def _track(delta: int) -> None:
    global _live
    with _live_lock:
        _live += delta


def race(bodies: Sequence[Body], sched: Scheduler | None = None) -> RaceResult:
    """Return the first body to complete (ids are 1-based) and cancel the rest.

    Blocks forever if no body terminates.  Bodies that raise FuelExhausted
    drop out; if all of them do, AllTasksExhausted is raised.  Any other
    exception from a body cancels the race and propagates.
    """
    if not bodies:
        raise ValueError("race needs at least one task")
    sched = sched or Scheduler()
    if sched.mode == INTERLEAVE:
        return _race_interleave(bodies, sched.step_budget)
    return _race_parallel(bodies, sched.threads)


def _race_interleave(bodies: Sequence[Body], budget: int) -> RaceResult:
    cancel = threading.Event()
    tasks = [RaceTask(i, b, _runtime.TaskContext(INTERLEAVE, cancel)) for i, b in enumerate(bodies, 1)]
    for t in tasks:
        t.start()
    alive = list(tasks)
    rounds = 0
    try:
        while alive:
            rounds += 1
            for t in list(alive):
                for _ in range(budget):
                    try:
                        t.advance()
                    except StopIteration as stop:
                        return RaceResult(t.id, stop.value, tuple(x.steps for x in tasks), rounds)
                    except FuelExhausted:
                        alive.remove(t)
                        break
        raise AllTasksExhausted(f"all {len(tasks)} tasks exhausted their fuel")
    finally:
        cancel.set()
        for t in tasks:
            t.close()


def _race_parallel(bodies: Sequence[Body], threads: int | None) -> RaceResult:
    cancel = threading.Event()
    tasks = [RaceTask(i, b, _runtime.TaskContext(PARALLEL, cancel)) for i, b in enumerate(bodies, 1)]
    nworkers = min(threads or len(tasks), len(tasks))
    share_gil = nworkers > 1
    lock = threading.Lock()
    outcome: dict[str, Any] = {}
    exhausted = [0]

    def settle(key: str, value: Any) -> None:
        with lock:
            if "winner" not in outcome and "error" not in outcome:
                outcome[key] = value
            cancel.set()

    def worker(lane: list[RaceTask]) -> None:
        try:
            for t in lane:
                t.start()
            active = list(lane)
            while active and not cancel.is_set():
                for t in list(active):
                    if cancel.is_set():
                        break
                    try:
                        t.advance()
                        if share_gil:
                            # checkpoint: let the other workers run
                            time.sleep(0)
                    except StopIteration as stop:
                        active.remove(t)
                        settle("winner", (t.id, stop.value))
                    except Cancelled:
                        active.remove(t)
                    except FuelExhausted:
                        active.remove(t)
                        with lock:
                            exhausted[0] += 1
                            if exhausted[0] == len(tasks):
                                cancel.set()
                    except BaseException as exc:
                        active.remove(t)
                        settle("error", exc)
        finally:
            for t in lane:
                t.close()
            _track(-1)

    lanes = [tasks[j::nworkers] for j in range(nworkers)]
    workers = [threading.Thread(target=worker, args=(lane,), daemon=True) for lane in lanes]
    for w in workers:
        _track(+1)
        w.start()
    try:
        cancel.wait()
    finally:
        cancel.set()
        for w in workers:
            w.join()
    if "error" in outcome:
        raise outcome["error"]
    if "winner" in outcome:
        wid, value = outcome["winner"]
        return RaceResult(wid, value, tuple(t.steps for t in tasks))
    raise AllTasksExhausted(f"all {len(tasks)} tasks exhausted their fuel")


def diverge():
    """A body that never completes."""
    while True:
        yield


# ---------------------------------------------------------------- trees


@dataclass(frozen=True)
class Leaf:
    value: Any


@dataclass(frozen=True)
class Continue:
    thunk: Callable[[], Amb]


@dataclass(frozen=True)
class Amb:
    children: tuple[Body, ...]

    def __post_init__(self):
        if not self.children:
            raise ValueError("an Amb node needs at least one child")

    @property
    def width(self) -> int:
        return len(self.children)


def amb(*children: Body) -> Amb:
    return Amb(tuple(children))


def ret(value: Any) -> Amb:
    """The width-1 tree that immediately yields ``value``."""
    return Amb((lambda: Leaf(value),))


def bind(first: Amb, then: Callable[[Any], Amb]) -> Amb:
    """Sequence ``then`` after ``first``: each Leaf(v) becomes Continue(then(v)).

    Node widths are those of ``first`` and of the trees ``then`` builds,
    never their product.
    """
    return Amb(tuple(_bind_child(c, then) for c in first.children))


def _bind_child(child: Body, then: Callable[[Any], Amb]) -> Body:
    def body():
        out = yield from _as_steps(child)
        if isinstance(out, Leaf):
            return Continue(lambda: then(out.value))
        if isinstance(out, Continue):
            return Continue(lambda: bind(out.thunk(), then))
        raise TypeError(f"Amb child produced {out!r}, expected Leaf or Continue")

    return body


@dataclass
class TreeStats:
    widths: list[int] = field(default_factory=list)
    races: list[RaceResult] = field(default_factory=list)
    ended_at_leaf: bool = False

    @property
    def max_width(self) -> int:
        return max(self.widths, default=0)


def eval_proc_tree(
    tree: Amb,
    sched: Scheduler | None = None,
    *,
    max_width: int | None = None,
    stats: TreeStats | None = None,
) -> Any:
    """Reduce ``tree`` one race per node until some child yields a Leaf."""
    while True:
        if max_width is not None and tree.width > max_width:
            raise ValueError(f"Amb node of width {tree.width} exceeds bound {max_width}")
        res = race(tree.children, sched)
        if stats is not None:
            stats.widths.append(tree.width)
            stats.races.append(res)
        out = res.value
        if isinstance(out, Leaf):
            if stats is not None:
                stats.ended_at_leaf = True
            return out.value
        if not isinstance(out, Continue):
            raise TypeError(f"Amb child produced {out!r}, expected Leaf or Continue")
        tree = out.thunk()
