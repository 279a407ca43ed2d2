import random
from fractions import Fraction

import pytest

from conftest import exact_product, noisy
from ambgauss.conc import Scheduler
from ambgauss.creal import from_rational, pow2
from ambgauss.errors import AllTasksExhausted, DimensionMismatch, SingularMatrix
from ambgauss.gauss import (
    CMatrix,
    InversionTrace,
    RationalMatrix,
    bit_size_profile,
    eliminate_column,
    identity,
    invert,
    mat_mul,
    oracle_invert,
    residual_check,
    start_state,
)
from ambgauss.matrices import random_integer_matrix, random_nonsingular, with_tiny_entries
from ambgauss.rational import dyadic

F = Fraction
BOTH = [Scheduler.parallel(), Scheduler.interleave(1)]
E3 = [[F(int(k == l)) for l in range(3)] for k in range(3)]


def approx_equal(cm, rows, p):
    return all(abs(x.approx(p) - q) <= dyadic(p) for r, qr in zip(cm.rows, rows) for x, q in zip(r, qr))


def test_identity():
    assert identity(1).approx(0) == [[1]]
    assert identity(2).approx(5) == [[1, 0], [0, 1]]
    assert identity(3).entry(1, 2).approx(40) == 0
    with pytest.raises(ValueError):
        identity(0)


def test_mat_mul_examples():
    e = identity(3)
    assert approx_equal(mat_mul(e, e), E3, 10)
    a = CMatrix.from_rationals([[2, 0], [0, 2]])
    b = CMatrix.from_rationals([[F(1, 2), 0], [0, F(1, 2)]])
    assert approx_equal(mat_mul(a, b), [[1, 0], [0, 1]], 20)


def test_mat_mul_against_exact_product(rng):
    for _ in range(10):
        a = [[F(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(3)] for _ in range(3)]
        b = [[F(rng.randint(-99, 99), rng.randint(1, 99)) for _ in range(3)] for _ in range(3)]
        assert approx_equal(mat_mul(CMatrix.from_rationals(a), CMatrix.from_rationals(b)), exact_product(a, b), 40)


def test_mat_mul_inexact_entries(rng):
    a = [[F(rng.randint(-20, 20), 7) for _ in range(3)] for _ in range(3)]
    b = [[F(rng.randint(-20, 20), 3) for _ in range(3)] for _ in range(3)]
    ca = CMatrix.of([[noisy(q, i + j) for j, q in enumerate(r)] for i, r in enumerate(a)])
    cb = CMatrix.of([[noisy(q, i * j) for j, q in enumerate(r)] for i, r in enumerate(b)])
    assert approx_equal(mat_mul(ca, cb), exact_product(a, b), 30)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        mat_mul(identity(2), identity(3))
    with pytest.raises(DimensionMismatch):
        CMatrix.of([[from_rational(1), from_rational(2)]])


# ------------------------------------------------------------- elimination


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_eliminate_identity_column(sched):
    trace = InversionTrace()
    st = eliminate_column(start_state(identity(2)), sched, trace=trace)
    assert trace.columns[0].row == 2
    assert trace.columns[0].candidates == (1, 2)
    assert st.i == 1
    assert st.acc_a.approx(0) == [[1, 0], [0, 1]]


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_eliminate_swap_column(sched):
    trace = InversionTrace()
    st = eliminate_column(start_state(CMatrix.from_rationals([[0, 1], [1, 0]])), sched, trace=trace)
    assert trace.columns[0].row == 1
    assert st.acc_a.approx(0) == [[1, 0], [0, 1]]


def test_eliminate_one_by_one():
    st = eliminate_column(start_state(CMatrix.from_rationals([[2]])), Scheduler.interleave())
    assert st.i == 0
    assert st.acc_b.approx(0) == [[F(1, 2)]]


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_column_invariant_exact_inputs(sched, rng):
    for n in range(1, 6):
        a = random_nonsingular(rng, n)
        trace = InversionTrace()
        st = start_state(CMatrix.from_rationals(a))
        while st.i > 0:
            st = eliminate_column(st, sched, trace=trace)
            got = st.acc_a.approx(0)
            for k in range(n):
                for l in range(st.i, n):
                    assert got[k][l] == (k == l)
        assert [c.candidates for c in trace.columns] == [tuple(range(1, i + 1)) for i in range(n, 0, -1)]


# ----------------------------------------------------------------- invert


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_invert_examples(sched):
    assert approx_equal(invert(identity(3), sched), E3, 30)
    swap = [[0, 1], [1, 0]]
    assert approx_equal(invert(CMatrix.from_rationals(swap), sched), swap, 20)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_invert_matches_oracle_5x5(sched, rng):
    a = random_nonsingular(rng, 5)
    inv = oracle_invert(RationalMatrix.of(a))
    b = invert(CMatrix.from_rationals(a), sched)
    assert approx_equal(b, inv.rows, 60)
    assert residual_check(b, CMatrix.from_rationals(a), 60) <= dyadic(60)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_invert_inexact_entries(sched, rng):
    for n in (2, 3, 4):
        a = random_nonsingular(rng, n, num_bits=5, den_bits=4)
        ca = CMatrix.of([[noisy(q, 3 * i + j) for j, q in enumerate(r)] for i, r in enumerate(a)])
        b = invert(ca, sched)
        inv = oracle_invert(RationalMatrix.of(a))
        assert approx_equal(b, inv.rows, 30)
        assert residual_check(b, ca, 30) <= dyadic(30)


def test_invert_with_tiny_entries(rng):
    a = with_tiny_entries(rng, random_nonsingular(rng, 4), 3)
    ca = CMatrix.from_rationals(a)
    for sched in BOTH:
        assert residual_check(invert(ca, sched), ca, 30) <= dyadic(30)


@pytest.mark.parametrize("memo", [True, False])
def test_function_and_stream_fields_agree(memo, rng):
    a = random_nonsingular(rng, 4)
    b = invert(CMatrix.from_rationals(a), Scheduler.interleave(), memo=memo)
    assert approx_equal(b, oracle_invert(RationalMatrix.of(a)).rows, 40)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_proc_tree_mode(sched, rng):
    a = random_nonsingular(rng, 4)
    trace = InversionTrace()
    b = invert(CMatrix.from_rationals(a), sched, proc_tree=True, trace=trace)
    assert approx_equal(b, oracle_invert(RationalMatrix.of(a)).rows, 40)
    assert trace.tree.max_width <= 4
    assert trace.tree.ended_at_leaf
    assert trace.tree.widths == [4, 3, 2, 1, 1]


def test_proc_tree_and_loop_agree_in_interleave(rng):
    a = CMatrix.from_rationals(random_nonsingular(rng, 5))
    t1, t2 = InversionTrace(), InversionTrace()
    b1 = invert(a, Scheduler.interleave(), trace=t1)
    b2 = invert(a, Scheduler.interleave(), proc_tree=True, trace=t2)
    assert [c.row for c in t1.columns] == [c.row for c in t2.columns]
    assert b1.approx(50) == b2.approx(50)


def test_invert_precision_check():
    b = invert(CMatrix.from_rationals([[2, 1], [1, 1]]), Scheduler.interleave(), precision=40)
    assert approx_equal(b, [[1, -1], [-1, 2]], 40)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_singular_exhausts_fuel(sched):
    with pytest.raises(AllTasksExhausted):
        invert(CMatrix.from_rationals([[1, 1], [1, 1]]), sched, fuel=200)


@pytest.mark.parametrize("sched", BOTH, ids=str)
def test_scheduler_independence(sched, rng):
    a = with_tiny_entries(rng, random_nonsingular(rng, 5), 4)
    ca = CMatrix.from_rationals(a)
    assert residual_check(invert(ca, sched), ca, 30) <= dyadic(30)


# ------------------------------------------------------------ residual/oracle


def test_residual_examples(rng):
    assert residual_check(identity(3), identity(3), 10) <= dyadic(10)
    a = random_nonsingular(rng, 3)
    inv = oracle_invert(RationalMatrix.of(a))
    assert residual_check(inv.to_cmatrix(), CMatrix.from_rationals(a), 30) <= dyadic(30)
    assert residual_check(identity(1), CMatrix.from_rationals([[2]]), 5) >= 1 - dyadic(5)
    with pytest.raises(DimensionMismatch):
        residual_check(identity(1), identity(2), 5)


def test_oracle_examples():
    e = RationalMatrix.of(E3)
    assert oracle_invert(e) == e
    assert oracle_invert(RationalMatrix.of([[2, 0], [0, 4]])).rows == ((F(1, 2), 0), (0, F(1, 4)))
    inv = oracle_invert(RationalMatrix.of([[1, 2], [3, 4]]))
    assert inv.rows == ((-2, 1), (F(3, 2), F(-1, 2)))
    assert exact_product([list(r) for r in inv.rows], [[1, 2], [3, 4]]) == [[1, 0], [0, 1]]


def test_oracle_singular():
    with pytest.raises(SingularMatrix):
        oracle_invert(RationalMatrix.of([[1, 1], [1, 1]]))


def test_bit_size_profile_examples():
    assert all(b <= 1 for b in bit_size_profile(RationalMatrix.of(E3)))
    assert max(bit_size_profile(RationalMatrix.of([[3, 7], [5, 2]]))) <= 8
    prof = bit_size_profile(RationalMatrix.of(random_integer_matrix(random.Random(1), 6, 64)))
    assert len(prof) == 7
    assert prof[0] < prof[1] < prof[2] < prof[3]
