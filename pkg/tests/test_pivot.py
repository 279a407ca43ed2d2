import random
from fractions import Fraction

import pytest

from conftest import doubling_trace
from ambgauss.conc import Scheduler
from ambgauss.creal import delayed, from_rational, pow2
from ambgauss.errors import AllTasksExhausted
from ambgauss.matrices import fast_slow_pair
from ambgauss.pivot import pivot2, pivot_interleaved, pivotN
from ambgauss.rational import dyadic

F = Fraction
BOTH = [Scheduler.parallel(), Scheduler.interleave(1)]


def valid(xs, pr):
    q = xs[pr.index - 1]
    return q != 0 and dyadic(pr.witness.k) <= abs(q)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_pivot2_only_nonzero(sched):
    pr = pivot2(from_rational(0), from_rational(F(1, 2)), sched)
    assert pr.index == 2
    assert pr.witness.k == doubling_trace(F(1, 2)) == 3


def test_pivot2_tie():
    assert pivot2(from_rational(1), from_rational(1), Scheduler.interleave(1)).index == 1


def test_pivot2_fast_beats_heavy():
    x, y = from_rational(8), delayed(dyadic(40), 50)
    pr = pivot2(x, y, Scheduler.interleave(1))
    assert pr.index == 1 and pr.witness.k == 0
    # entry 1 finishes in round 1 before the heavy search starts
    assert pr.race.steps == (1, 0)
    pr = pivot2(x, y, Scheduler.parallel())
    assert valid([F(8), dyadic(40)], pr)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_pivotN_examples(sched):
    pr = pivotN([from_rational(0), from_rational(0), from_rational(3)], sched)
    assert (pr.index, pr.witness.k) == (3, 0)
    assert pivotN([from_rational(5)], sched).index == 1


def test_pivotN_fewer_steps_wins_in_interleave():
    xs = [from_rational(0), pow2(-20), from_rational(0), from_rational(1)]
    # search steps: 1 -> 3, 2^-20 -> 23
    assert doubling_trace(F(1)) + 1 == 3
    assert doubling_trace(dyadic(20)) + 1 == 23
    assert pivotN(xs, Scheduler.interleave(1)).index == 4
    assert pivot_interleaved(xs).index == 4


def test_pivot_interleaved_matches_examples():
    assert pivot_interleaved([from_rational(0), from_rational(0), from_rational(3)]).index == 3
    assert pivot_interleaved([from_rational(5)]).index == 1


def test_empty_rejected():
    with pytest.raises(ValueError):
        pivotN([])


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_all_zero_with_fuel(sched):
    with pytest.raises(AllTasksExhausted):
        pivotN([from_rational(0)] * 3, sched, fuel=50)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_soundness_on_random_vectors(sched):
    rng = random.Random(7)
    for _ in range(500):
        n = rng.randint(1, 6)
        qs = [
            F(0) if rng.random() < 0.4 else F(rng.choice([-1, 1]) * rng.randint(1, 1 << 12), 1 << rng.randint(0, 40))
            for _ in range(n)
        ]
        if all(q == 0 for q in qs):
            qs[rng.randrange(n)] = F(1, 3)
        pr = pivotN([from_rational(q) for q in qs], sched)
        assert valid(qs, pr), (qs, pr)


def test_work_comparison_fast_slow():
    fast, slow = fast_slow_pair()
    s_fast = doubling_trace(fast.value) + 1
    assert s_fast == 5 and doubling_trace(slow.value) + 1 == 25
    inter = pivotN([fast.to_creal(), slow.to_creal()], Scheduler.interleave(1))
    par = pivotN([fast.to_creal(), slow.to_creal()], Scheduler.parallel())
    assert inter.index == 1 and par.index == 1
    assert inter.race.winner_steps == s_fast
    assert par.race.winner_steps == s_fast
    assert inter.race.total_steps >= 2 * s_fast - 1
    # the fast search finishes in round 5, before the slow one's fifth query
    assert inter.race.steps == (5, 400)
