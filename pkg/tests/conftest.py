import random
from fractions import Fraction

import hypothesis
import pytest

from ambgauss.conc import live_workers
from ambgauss.creal import CReal
from ambgauss.rational import dyadic

hypothesis.settings.register_profile("default", deadline=None, max_examples=100)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=20)
hypothesis.settings.load_profile("default")


def noisy(q: Fraction, seed: int) -> CReal:
    """q approximated with a deliberate error of up to the full 2^-n."""
    wobble = (Fraction(-1), Fraction(1), Fraction(-1, 2), Fraction(0), Fraction(1, 2))

    def fn(n):
        return q + wobble[(seed * 7 + n * 13) % 5] * dyadic(n)

    return CReal(fn)


def doubling_trace(q: Fraction) -> int:
    """Independent oracle for the witness search on an exact rational."""
    k = 0
    while abs(q) <= 2:
        q *= 2
        k += 1
    return k


def exact_product(a, b):
    n = len(a)
    return [[sum(a[k][i] * b[i][l] for i in range(n)) for l in range(n)] for k in range(n)]


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(autouse=True)
def no_leaked_workers():
    before = live_workers()
    yield
    assert live_workers() == before


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
