"""Scalar expressions and the JSON matrix / vector file formats.

Scalars: ``"p/q"``, ``"p"``, ``"pow2(-N)"``, ``"delayed(p/q, c)"``.
Matrix files: ``{"dim": n, "entries": [[e, ...], ...]}`` where ``e`` is a
scalar string or ``{"value": "p/q", "cost": c}``.
Vector files: ``{"entries": [e, ...]}`` or a bare list.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .creal import CReal, delayed, from_rational
from .errors import ParseError
from .gauss import CMatrix, RationalMatrix
from .rational import format_rational, parse_rational


@dataclass(frozen=True)
class Entry:
    value: Fraction
    cost: int | None = None

    def to_creal(self) -> CReal:
        if self.cost is None:
            return from_rational(self.value)
        return delayed(self.value, self.cost)

    def to_json(self) -> Any:
        if self.cost is None:
            return format_rational(self.value)
        return {"value": format_rational(self.value), "cost": self.cost}


_POW2_RE = re.compile(r"^\s*pow2\(\s*([+-]?\d+)\s*\)\s*$")
_DELAYED_RE = re.compile(r"^\s*delayed\(\s*([^,]+?)\s*,\s*(\d+)\s*\)\s*$")


def parse_scalar(text: str) -> Entry:
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {text!r}")
    m = _POW2_RE.match(text)
    if m:
        return Entry(Fraction(2) ** int(m.group(1)))
    m = _DELAYED_RE.match(text)
    if m:
        return Entry(parse_rational(m.group(1)), int(m.group(2)))
    return Entry(parse_rational(text))


def parse_entry(obj: Any) -> Entry:
    if isinstance(obj, dict):
        try:
            value, cost = obj["value"], obj.get("cost")
        except (KeyError, TypeError):
            raise ParseError(f"entry object needs a 'value': {obj!r}") from None
        base = parse_scalar(value)
        if cost is None:
            return base
        if not isinstance(cost, int) or isinstance(cost, bool) or cost < 0:
            raise ParseError(f"cost must be a non-negative integer: {cost!r}")
        return Entry(base.value, cost)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Entry(Fraction(obj))
    return parse_scalar(obj)


@dataclass(frozen=True)
class MatrixSpec:
    entries: tuple[tuple[Entry, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def to_cmatrix(self) -> CMatrix:
        return CMatrix.of([[e.to_creal() for e in row] for row in self.entries])

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix.of([[e.value for e in row] for row in self.entries])

    def to_json(self) -> dict:
        return {"dim": self.dim, "entries": [[e.to_json() for e in row] for row in self.entries]}


def parse_matrix(doc: Any) -> MatrixSpec:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError("matrix document must be an object with 'entries'")
    rows = doc["entries"]
    if not isinstance(rows, list) or not rows:
        raise ParseError("'entries' must be a non-empty list of rows")
    n = doc.get("dim", len(rows))
    if n != len(rows) or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"'entries' must be a {n}x{n} grid")
    return MatrixSpec(tuple(tuple(parse_entry(e) for e in r) for r in rows))


def parse_vector(doc: Any) -> tuple[Entry, ...]:
    items = doc.get("entries") if isinstance(doc, dict) else doc
    if not isinstance(items, list) or not items:
        raise ParseError("vector must be a non-empty list of entries")
    return tuple(parse_entry(e) for e in items)


def _read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def load_matrix(path: str | Path) -> MatrixSpec:
    return parse_matrix(_read_json(path))


def load_vector(path: str | Path) -> tuple[Entry, ...]:
    return parse_vector(_read_json(path))
