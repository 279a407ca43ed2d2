"""Matrix inversion by Gaussian elimination with concurrent pivoting.

Columns are cleared from the last to the first.  Before column i is
processed, the working matrix agrees with the identity on columns
i+1..n.  The pivot for column i is found by racing witness searches over
rows 1..i; the pivot row is scaled by the inverse of the pivot, swapped
into row i, and its multiples are subtracted from every other row.  The
same row operations applied to the identity accumulate the inverse.

Row and column numbers in traces and pivot results are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import conc
from .conc import Scheduler, TreeStats
from .creal import CReal, cr_inv, from_rational, to_memo_stream
from .errors import DimensionMismatch, SingularMatrix
from .pivot import PivotResult, pivotN, search_body
from .rational import bit_size, dyadic
from .witness import Witness


@dataclass(frozen=True)
class CMatrix:
    rows: tuple[tuple[CReal, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise ValueError("matrix dimension must be >= 1")
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("matrix must be square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[CReal]]) -> CMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_rationals(cls, rows) -> CMatrix:
        return cls.of([[from_rational(Fraction(q)) for q in r] for r in rows])

    def entry(self, k: int, l: int) -> CReal:
        return self.rows[k - 1][l - 1]

    def approx(self, p: int) -> list[list[Fraction]]:
        return [[x.approx(p) for x in r] for r in self.rows]


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise ValueError("matrix dimension must be >= 1")
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("matrix must be square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def of(cls, rows) -> RationalMatrix:
        return cls(tuple(tuple(Fraction(q) for q in r) for r in rows))

    def to_cmatrix(self) -> CMatrix:
        return CMatrix.from_rationals(self.rows)


def identity(n: int) -> CMatrix:
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    one, zero = from_rational(1), from_rational(0)
    return CMatrix.of([[one if k == l else zero for l in range(n)] for k in range(n)])


def _sum(xs: Sequence[CReal]) -> CReal:
    acc = xs[0]
    for x in xs[1:]:
        acc = acc + x
    return acc


def mat_mul(a: CMatrix, b: CMatrix) -> CMatrix:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    n = a.dim
    cols = [[b.rows[i][l] for i in range(n)] for l in range(n)]
    return CMatrix.of([[_sum([x * y for x, y in zip(row, col)]) for col in cols] for row in a.rows])


@dataclass(frozen=True)
class EliminationState:
    i: int  # columns i+1..n of acc_a already agree with the identity
    acc_a: CMatrix
    acc_b: CMatrix


@dataclass(frozen=True)
class ColumnStep:
    column: int
    candidates: tuple[int, ...]
    row: int
    witness: int
    steps: tuple[int, ...]
    winner_steps: int


@dataclass
class InversionTrace:
    columns: list[ColumnStep] = field(default_factory=list)
    tree: TreeStats | None = None

    def record(self, i: int, pr: PivotResult) -> None:
        steps = pr.race.steps if pr.race is not None else ()
        winner = pr.race.winner_steps if pr.race is not None else 0
        self.columns.append(ColumnStep(i, tuple(range(1, i + 1)), pr.index, pr.witness.k, steps, winner))


def start_state(a: CMatrix) -> EliminationState:
    return EliminationState(a.dim, a, identity(a.dim))


def apply_pivot(st: EliminationState, k0: int, witness: Witness, memo: bool = True) -> EliminationState:
    """Apply scale (row k0 by alpha), swap (rows k0, i) and clear (column i)."""
    wrap: Callable[[CReal], CReal] = to_memo_stream if memo else (lambda x: x)
    i = st.i
    c, p = i - 1, k0 - 1
    if not 0 <= p <= c:
        raise ValueError(f"pivot row {k0} outside rows 1..{i}")
    A = [list(r) for r in st.acc_a.rows]
    B = [list(r) for r in st.acc_b.rows]
    # columns > i are unit columns and every row operation below leaves them
    # unchanged (their entries in rows k0 and i are zero), so only columns
    # 1..i of acc_a are touched
    alpha = wrap(cr_inv(A[p][c], witness))
    A[p] = [wrap(alpha * x) if l <= c else x for l, x in enumerate(A[p])]
    B[p] = [wrap(alpha * x) for x in B[p]]
    A[p], A[c] = A[c], A[p]
    B[p], B[c] = B[c], B[p]
    for k in range(len(A)):
        if k == c:
            continue
        f = A[k][c]
        A[k] = [wrap(x - f * y) if l <= c else x for l, (x, y) in enumerate(zip(A[k], A[c]))]
        B[k] = [wrap(x - f * y) for x, y in zip(B[k], B[c])]
    return EliminationState(i - 1, CMatrix.of(A), CMatrix.of(B))


def pivot_candidates(st: EliminationState) -> list[CReal]:
    c = st.i - 1
    return [st.acc_a.rows[k][c] for k in range(st.i)]


def eliminate_column(
    st: EliminationState,
    sched: Scheduler | None = None,
    *,
    fuel: int | None = None,
    memo: bool = True,
    trace: InversionTrace | None = None,
) -> EliminationState:
    """Clear column st.i; blocks (or exhausts fuel) if the matrix is singular."""
    if st.i < 1:
        raise ValueError("no column left to eliminate")
    pr = pivotN(pivot_candidates(st), sched, fuel)
    if trace is not None:
        trace.record(st.i, pr)
    return apply_pivot(st, pr.index, pr.witness, memo)


def inversion_tree(
    st: EliminationState,
    *,
    fuel: int | None = None,
    memo: bool = True,
    trace: InversionTrace | None = None,
) -> conc.Amb:
    """The whole inversion as a process tree of width at most n.

    Each node races the pivot searches for one column; its continuation
    applies the row operations and builds the node for the next column.
    """
    if st.i == 0:
        return conc.ret(st.acc_b)
    candidates = pivot_candidates(st)

    def child(k: int, x: CReal):
        search = search_body(x, fuel)

        def body():
            w = yield from search()
            return conc.Leaf((k, w))

        return body

    node = conc.Amb(tuple(child(k, x) for k, x in enumerate(candidates, 1)))

    def then(found):
        k0, w = found
        if trace is not None:
            trace.record(st.i, PivotResult(k0, w))
        return inversion_tree(apply_pivot(st, k0, w, memo), fuel=fuel, memo=memo, trace=trace)

    return conc.bind(node, then)


def invert(
    a: CMatrix,
    sched: Scheduler | None = None,
    precision: int | None = None,
    *,
    fuel: int | None = None,
    memo: bool = True,
    proc_tree: bool = False,
    trace: InversionTrace | None = None,
) -> CMatrix:
    """Left inverse B of a non-singular matrix, B * a = E.

    Non-singularity cannot be checked; a singular input makes some pivot
    race block forever, or raise AllTasksExhausted when ``fuel`` is set.
    With ``precision`` p the result is also checked: residual <= 2^-p.
    ``proc_tree`` sequences the pivot races through a process tree instead
    of a plain loop.
    """
    st = start_state(a)
    if proc_tree:
        stats = TreeStats()
        if trace is not None:
            trace.tree = stats
        b = conc.eval_proc_tree(inversion_tree(st, fuel=fuel, memo=memo, trace=trace), sched, max_width=a.dim, stats=stats)
    else:
        while st.i > 0:
            st = eliminate_column(st, sched, fuel=fuel, memo=memo, trace=trace)
        b = st.acc_b
    if precision is not None:
        err = residual_check(b, a, precision)
        if err > dyadic(precision):
            raise ArithmeticError(f"residual {err} exceeds 2^-{precision}")
    return b


def residual_check(b: CMatrix, a: CMatrix, p: int) -> Fraction:
    """max |(b*a)(k,l).approx(p) - E(k,l)|."""
    prod = mat_mul(b, a)
    n = a.dim
    return max(
        abs(prod.rows[k][l].approx(p) - (1 if k == l else 0)) for k in range(n) for l in range(n)
    )


# ------------------------------------------------------------ exact oracle


def _gauss_jordan(a: RationalMatrix, profile: list[int] | None = None) -> RationalMatrix:
    n = a.dim
    m = [list(r) + [Fraction(int(k == l)) for l in range(n)] for k, r in enumerate(a.rows)]

    def measure():
        if profile is not None:
            profile.append(max(bit_size(x) for r in m for x in r))

    measure()
    for c in range(n):
        r = next((r for r in range(c, n) if m[r][c] != 0), None)
        if r is None:
            raise SingularMatrix(f"no nonzero pivot in column {c + 1}")
        m[c], m[r] = m[r], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for k in range(n):
            if k != c and m[k][c] != 0:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[c])]
        measure()
    return RationalMatrix.of([r[n:] for r in m])


def oracle_invert(a: RationalMatrix) -> RationalMatrix:
    """Exact inverse by Gauss-Jordan with first-nonzero pivoting."""
    inv = _gauss_jordan(a)
    n = a.dim
    for k in range(n):
        for l in range(n):
            s = sum(inv.rows[k][i] * a.rows[i][l] for i in range(n))
            if s != (1 if k == l else 0):
                raise AssertionError("oracle inverse failed its exact check")
    return inv


def bit_size_profile(a: RationalMatrix) -> list[int]:
    """Max numerator/denominator bit length of the working matrix [a | E].

    Entry 0 is the input; entry j is measured after column j is cleared.
    """
    profile: list[int] = []
    _gauss_jordan(a, profile)
    return profile
