"""Exact real arithmetic and matrix inversion with concurrent pivot search."""

from .conc import Amb, Continue, Leaf, RaceResult, Scheduler, bind, eval_proc_tree, race
from .creal import (
    CReal,
    MemoStream,
    Repr,
    SignedDigitStream,
    cr_add,
    cr_inv,
    cr_mul,
    cr_neg,
    cr_sub,
    delayed,
    from_rational,
    from_signed_digit,
    pow2,
    to_memo_stream,
    to_signed_digit,
)
from .gauss import CMatrix, RationalMatrix, identity, invert, mat_mul, oracle_invert, residual_check
from .pivot import PivotResult, pivot2, pivot_interleaved, pivotN
from .witness import Witness, archimedean_rec, phi1

__version__ = "0.1.0"
