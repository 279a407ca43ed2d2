"""Parallel vs interleaved pivot search: minimum vs sum of the work.

Runs the fast/slow two-entry pivot race and the hard-pivot matrix family
under both schedulers and prints wall times and counted steps.

    python3 scripts/compare_schedulers.py --runs 10 --dims 3 4 6
"""

import argparse
import random
import statistics
import time

from ambgauss.conc import Scheduler
from ambgauss.gauss import InversionTrace, invert, residual_check
from ambgauss.matrices import fast_slow_pair, hard_pivot_matrix
from ambgauss.pivot import pivotN
from ambgauss.rational import dyadic


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def pair(runs: int) -> None:
    xs = [e.to_creal() for e in fast_slow_pair()]
    walls = {"parallel": [], "interleave": []}
    for _ in range(runs):
        for name, sched in (("parallel", Scheduler.parallel()), ("interleave", Scheduler.interleave())):
            res, wall = timed(lambda: pivotN(xs, sched))
            walls[name].append(wall)
    print(f"pair: interleave steps {res.race.steps} winner {res.race.winner_steps}")
    for name, ws in walls.items():
        print(f"  {name:>10}: median {statistics.median(ws) * 1e3:7.2f} ms over {runs} runs")


def matrices(dims, runs: int, seed: int, precision: int) -> None:
    for n in dims:
        spec = hard_pivot_matrix(random.Random(seed), n)
        a = spec.to_cmatrix()
        for name, sched in (("parallel", Scheduler.parallel()), ("interleave", Scheduler.interleave())):
            walls = []
            for _ in range(runs):
                trace = InversionTrace()
                b, wall = timed(lambda: invert(a, sched, trace=trace))
                walls.append(wall)
            ok = residual_check(b, a, precision) <= dyadic(precision)
            work = sum(sum(c.steps) for c in trace.columns)
            print(
                f"dim {n} {name:>10}: median {statistics.median(walls) * 1e3:8.2f} ms  "
                f"rows {[c.row for c in trace.columns]}  steps {work}  residual ok={ok}"
            )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=5)
    ap.add_argument("--dims", type=int, nargs="+", default=[3, 4, 6])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--precision", type=int, default=30)
    args = ap.parse_args()
    pair(args.runs)
    matrices(args.dims, args.runs, args.seed, args.precision)


if __name__ == "__main__":
    main()
