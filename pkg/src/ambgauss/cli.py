"""Command-line harness: invert, bench, convert, pivot.

Reports go to stdout as JSON, a readable summary goes to stderr.
Exit codes: 0 ok, 1 parse error, 2 fuel exhausted or singular matrix,
3 domain violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .conc import Scheduler, live_workers
from .creal import to_memo_stream, to_signed_digit
from .errors import DomainViolation, FuelExhausted, ParseError, SingularMatrix
from .formats import MatrixSpec, load_matrix, load_vector, parse_scalar
from .gauss import InversionTrace, RationalMatrix, bit_size_profile, invert, oracle_invert, residual_check
from .matrices import hard_pivot_matrix, random_integer_matrix
from .pivot import pivotN
from .rational import bit_size, dyadic, format_rational

MODES = ("parallel", "interleave", "rational-oracle")

EXIT_OK, EXIT_PARSE, EXIT_FUEL, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    mode: str = "parallel"
    precision: int = 30
    fuel: int | None = None
    seed: int = 0
    dim: int = 4
    threads: int | None = None
    step_budget: int = 1
    memo: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")

    def scheduler(self, mode: str | None = None) -> Scheduler:
        mode = mode or self.mode
        if mode == "interleave":
            return Scheduler.interleave(self.step_budget)
        return Scheduler.parallel(self.threads)


@dataclass
class ModeRun:
    mode: str
    wall_time: float
    pivot_rows: list[int]
    winner_steps: list[int]
    total_steps: list[int]
    residual: str | None = None
    residual_ok: bool | None = None


@dataclass
class BenchReport:
    dim: int
    seed: int
    precision: int
    runs: list[ModeRun] = field(default_factory=list)
    max_bits: int | None = None
    bit_profile: list[int] | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> BenchReport:
        doc = json.loads(text)
        doc["runs"] = [ModeRun(**r) for r in doc["runs"]]
        return cls(**doc)


def _fmt(q: Fraction) -> str:
    return format_rational(q)


def run_invert(spec: MatrixSpec, config: RunConfig) -> dict[str, Any]:
    """Invert ``spec`` per ``config``; raises FuelExhausted / SingularMatrix."""
    p = config.precision
    report: dict[str, Any] = {"mode": config.mode, "dim": spec.dim, "precision": p}
    if config.mode == "rational-oracle":
        a = spec.to_rational()
        inv = oracle_invert(a)
        report["inverse"] = [[_fmt(x) for x in r] for r in inv.rows]
        report["residual"] = _fmt(Fraction(0))
        report["residual_ok"] = True
        report["bit_profile"] = bit_size_profile(a)
        report["max_bits"] = max(bit_size(x) for r in inv.rows for x in r)
        return report
    a = spec.to_cmatrix()
    trace = InversionTrace()
    b = invert(a, config.scheduler(), fuel=config.fuel, memo=config.memo, trace=trace)
    err = residual_check(b, a, p)
    report["inverse"] = [[_fmt(x) for x in r] for r in b.approx(p)]
    report["residual"] = _fmt(err)
    report["residual_ok"] = err <= dyadic(p)
    report["pivots"] = [
        {"column": c.column, "row": c.row, "witness": c.witness, "steps": list(c.steps)} for c in trace.columns
    ]
    return report


def _bench_mode(spec: MatrixSpec, config: RunConfig, mode: str) -> ModeRun:
    a = spec.to_cmatrix()
    trace = InversionTrace()
    t0 = time.perf_counter()
    b = invert(a, config.scheduler(mode), fuel=config.fuel, memo=config.memo, trace=trace)
    wall = time.perf_counter() - t0
    err = residual_check(b, a, config.precision)
    return ModeRun(
        mode=mode,
        wall_time=wall,
        pivot_rows=[c.row for c in trace.columns],
        winner_steps=[c.winner_steps for c in trace.columns],
        total_steps=[sum(c.steps) for c in trace.columns],
        residual=_fmt(err),
        residual_ok=err <= dyadic(config.precision),
    )


def run_bench(config: RunConfig) -> BenchReport:
    """Parallel vs interleaved pivoting on the hard-pivot family.

    In rational-oracle mode, instead profile exact elimination on a random
    matrix with 64-bit integer entries.
    """
    rng = random.Random(config.seed)
    report = BenchReport(config.dim, config.seed, config.precision)
    if config.mode == "rational-oracle":
        ra = RationalMatrix.of(random_integer_matrix(rng, config.dim, 64))
        t0 = time.perf_counter()
        report.bit_profile = bit_size_profile(ra)
        report.runs.append(ModeRun("rational-oracle", time.perf_counter() - t0, [], [], []))
        report.max_bits = max(report.bit_profile)
        return report
    spec = hard_pivot_matrix(rng, config.dim)
    for mode in ("parallel", "interleave"):
        report.runs.append(_bench_mode(spec, config, mode))
    report.max_bits = max(bit_size(x) for r in oracle_invert(spec.to_rational()).rows for x in r)
    return report


def run_convert(expr: str, target: str, n: int) -> list[str]:
    x = parse_scalar(expr).to_creal()
    if target == "signed-digit":
        return [",".join(str(d) for d in to_signed_digit(x).take(n))]
    if target == "stream":
        x = to_memo_stream(x)
    return [f"{i} {_fmt(x.approx(i))}" for i in range(n)]


def run_pivot(entries, config: RunConfig) -> dict[str, Any]:
    mode = "parallel" if config.mode == "rational-oracle" else config.mode
    pr = pivotN([e.to_creal() for e in entries], config.scheduler(mode), config.fuel)
    return {"mode": mode, "index": pr.index, "witness": pr.witness.k, "steps": list(pr.race.steps)}


# ------------------------------------------------------------------ output


def _emit(report: Any) -> None:
    print(json.dumps(report, sort_keys=True))


def _table(report: dict[str, Any]) -> None:
    err = sys.stderr
    print(f"mode={report['mode']} dim={report['dim']} precision={report['precision']}", file=err)
    for c in report.get("pivots", []):
        print(f"  column {c['column']}: pivot row {c['row']} (k={c['witness']}) steps {c['steps']}", file=err)
    print(f"  residual {report['residual']} ok={report['residual_ok']}", file=err)


def _fail(code: int, exc: BaseException) -> int:
    print(f"error: {exc}", file=sys.stderr)
    return code


def cmd_invert(path: str, config: RunConfig) -> int:
    try:
        spec = load_matrix(path)
    except ParseError as exc:
        return _fail(EXIT_PARSE, exc)
    try:
        report = run_invert(spec, config)
    except (FuelExhausted, SingularMatrix) as exc:
        return _fail(EXIT_FUEL, exc)
    _emit(report)
    _table(report)
    return EXIT_OK


def cmd_bench(config: RunConfig) -> int:
    try:
        report = run_bench(config)
    except (FuelExhausted, SingularMatrix) as exc:
        return _fail(EXIT_FUEL, exc)
    print(report.to_json())
    for r in report.runs:
        print(
            f"{r.mode:>15}: {r.wall_time * 1e3:9.2f} ms  rows {r.pivot_rows}  "
            f"winner steps {r.winner_steps}  total steps {r.total_steps}  residual ok={r.residual_ok}",
            file=sys.stderr,
        )
    if report.bit_profile is not None:
        print(f"bit profile {report.bit_profile}", file=sys.stderr)
    return EXIT_OK


def cmd_convert(expr: str, target: str, n: int) -> int:
    try:
        lines = run_convert(expr, target, n)
    except ParseError as exc:
        return _fail(EXIT_PARSE, exc)
    except DomainViolation as exc:
        return _fail(EXIT_DOMAIN, exc)
    for line in lines:
        print(line)
    return EXIT_OK


def cmd_pivot(path: str, config: RunConfig) -> int:
    try:
        entries = load_vector(path)
    except ParseError as exc:
        return _fail(EXIT_PARSE, exc)
    try:
        report = run_pivot(entries, config)
    except FuelExhausted as exc:
        return _fail(EXIT_FUEL, exc)
    _emit(report)
    return EXIT_OK


def _env_int(name: str) -> int | None:
    v = os.environ.get(name)
    return int(v) if v else None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default=os.environ.get("AMBGAUSS_MODE", "parallel"))
    common.add_argument("--precision", type=int, default=30)
    common.add_argument("--fuel", type=int, default=None, help="step cap per witness search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dim", type=int, default=4)
    common.add_argument("--threads", type=int, default=_env_int("AMBGAUSS_THREADS"), help="worker cap")
    common.add_argument("--step-budget", type=int, default=1, help="steps per task per round (interleave)")
    common.add_argument("--no-memo", action="store_true", help="use plain function reals, no stream caching")

    parser = argparse.ArgumentParser(prog="ambgauss", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("invert", parents=[common], help="invert a matrix file")
    p.add_argument("file")
    sub.add_parser("bench", parents=[common], help="compare parallel and interleaved pivoting")
    p = sub.add_parser("convert", help="print approximations or signed digits of a scalar")
    p.add_argument("expr")
    p.add_argument("--to", dest="target", choices=("cauchy", "stream", "signed-digit"), default="cauchy")
    p.add_argument("-n", type=int, default=8)
    p = sub.add_parser("pivot", parents=[common], help="race witness searches over a vector file")
    p.add_argument("file")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        mode=args.mode,
        precision=args.precision,
        fuel=args.fuel,
        seed=args.seed,
        dim=args.dim,
        threads=args.threads,
        step_budget=args.step_budget,
        memo=not args.no_memo,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "convert":
        return cmd_convert(args.expr, args.target, args.n)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        return _fail(EXIT_PARSE, exc)
    before = live_workers()
    if args.command == "invert":
        code = cmd_invert(args.file, config)
    elif args.command == "bench":
        code = cmd_bench(config)
    else:
        code = cmd_pivot(args.file, config)
    assert live_workers() == before
    return code


if __name__ == "__main__":
    sys.exit(main())
