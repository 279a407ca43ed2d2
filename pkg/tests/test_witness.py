import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import doubling_trace
from ambgauss.creal import CReal, from_rational, pow2
from ambgauss.errors import FuelExhausted
from ambgauss.rational import dyadic
from ambgauss.witness import (
    Continue,
    Done,
    Witness,
    archimedean_rec,
    drive,
    mult2,
    phi1,
    phi1_step,
    phi1_steps,
)

F = Fraction

nonzero = st.builds(
    lambda m, e, sign: sign * F(m, 1 << 20) * F(2) ** e,
    st.integers(1 << 19, 1 << 20),
    st.integers(-40, 5),
    st.sampled_from([1, -1]),
)


def test_rec_done_immediately():
    assert archimedean_rec(lambda s: Done(7), lambda s: s, 0) == 7


def test_rec_counts_doublings():
    step = lambda s: Done(0) if s >= 4 else Continue(lambda v: v + 1)
    assert archimedean_rec(step, lambda s: 2 * s, 1) == 2


def test_rec_applies_transforms_innermost_first():
    # continue with "append 'a'", then "append 'b'", then done with ''
    outcomes = iter([Continue(lambda v: v + "a"), Continue(lambda v: v + "b"), Done("")])
    assert archimedean_rec(lambda s: next(outcomes), lambda s: s, None) == "ba"


def test_rec_fuel():
    with pytest.raises(FuelExhausted):
        archimedean_rec(lambda s: Continue(lambda v: v), lambda s: s, 0, fuel=10)


@pytest.mark.parametrize(
    "q, k",
    [(F(4), 0), (F(1), 2), (F(-1, 8), 5), (F(1, 2), 3), (F(3), 0), (F(1, 4), 4), (dyadic(22), 24)],
)
def test_phi1_traces(q, k):
    assert doubling_trace(q) == k
    w = phi1(from_rational(q))
    assert w == Witness(k)
    assert w.bound() <= abs(q)


def test_phi1_zero_exhausts_fuel():
    with pytest.raises(FuelExhausted):
        phi1(from_rational(0), fuel=64)


def test_phi1_on_zero_with_large_fuel_has_no_deep_recursion():
    with pytest.raises(FuelExhausted):
        phi1(from_rational(0), fuel=10_000)


def test_phi1_steps_one_query_per_step():
    queries = []
    x = CReal(lambda n: (queries.append(n), F(1, 4))[1])
    w, steps = drive(phi1_steps(x))
    assert w.k == doubling_trace(F(1, 4)) == 4
    assert steps == len(queries) == 5


@given(nonzero)
def test_phi1_sound(q):
    w = phi1(from_rational(q))
    assert dyadic(w.k) <= abs(q)


@given(nonzero)
def test_phi1_cost_bound(q):
    _, steps = drive(phi1_steps(from_rational(q)))
    recursions = steps - 1
    assert recursions <= max(0, math.ceil(-math.log2(abs(q)))) + 3


@given(nonzero)
def test_combinator_instance_coherence(q):
    x = from_rational(q)
    assert archimedean_rec(phi1_step, mult2, x) == phi1(x).k


def test_phi1_on_inexact_approximations():
    # approximations off by the full 2^-n still yield a valid witness
    x = CReal(lambda n: F(3, 1000) - dyadic(n))
    w = phi1(x)
    assert dyadic(w.k) <= F(3, 1000)


def test_witness_validation():
    with pytest.raises(ValueError):
        Witness(-1)
    assert phi1(pow2(-30)).k == 32
