"""Text format for coefficient files.

A coefficient file is UTF-8 with LF line endings and whitespace-separated
tokens; ``#`` starts a comment.  The canonical layout is

    rcforms 1
    kind jacobi            (or: kind siegel)
    weight 4
    index 1                (jacobi only)
    trunc 8
    coeff 0 0 1/1          (jacobi: n r value; siegel: n r m value)
    ...
    END

Coefficient records are sorted ascending lexicographically by key, omitted
coefficients are zero, and every value is a reduced fraction printed as
num/den with den >= 1.  Import enforces all of that, so accepted canonical
files re-export byte-identically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from pathlib import Path

from .series import JacobiSeries
from .siegel import SiegelSeries

FORMAT_TAG = "rcforms"
FORMAT_VERSION = 1

_FRACTION_ARG = re.compile(r"^[+-]?\d+(/\d+)?$")


class ParseError(ValueError):
    """Malformed coefficient file, with the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational_token(token: str, line: int) -> Fraction:
    """Strict num/den record value: reduced, positive denominator, nonzero."""
    parts = token.split("/")
    if len(parts) != 2:
        raise ParseError(line, f"coefficient value must be num/den, got {token!r}")
    try:
        num, den = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(line, f"coefficient value must be num/den, got {token!r}") from None
    if den < 1:
        raise ParseError(line, f"denominator must be >= 1, got {den}")
    if gcd(num, den) != 1:
        raise ParseError(line, f"fraction {token} is not reduced")
    if num == 0:
        raise ParseError(line, "zero coefficients must be omitted")
    return Fraction(num, den)


def parse_fraction_arg(text: str) -> Fraction:
    """Exact fraction from a command-line string; decimal input is rejected."""
    text = text.strip().replace("−", "-")
    if not _FRACTION_ARG.match(text):
        raise ValueError(f"not an exact fraction: {text!r} (use forms like 3, -2, -1/2)")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def export_series(obj: JacobiSeries | SiegelSeries) -> str:
    if isinstance(obj, JacobiSeries):
        lines = [
            f"{FORMAT_TAG} {FORMAT_VERSION}",
            "kind jacobi",
            f"weight {obj.weight}",
            f"index {obj.index}",
            f"trunc {obj.trunc}",
        ]
        lines += [f"coeff {n} {r} {format_rational(v)}" for (n, r), v in obj.items()]
    elif isinstance(obj, SiegelSeries):
        lines = [
            f"{FORMAT_TAG} {FORMAT_VERSION}",
            "kind siegel",
            f"weight {obj.weight}",
            f"trunc {obj.trunc}",
        ]
        lines += [f"coeff {n} {r} {m} {format_rational(v)}" for (n, r, m), v in obj.items()]
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    lines.append("END")
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str):
        self.rows = []
        for number, raw in enumerate(text.split("\n"), start=1):
            content = raw.split("#", 1)[0].strip()
            if content:
                self.rows.append((number, content.split()))
        self.cursor = 0

    def peek(self):
        return self.rows[self.cursor] if self.cursor < len(self.rows) else (0, None)

    def take(self, expected_key: str, count: int) -> tuple[int, list[str]]:
        line, tokens = self.peek()
        if tokens is None:
            raise ParseError(line or 1, f"unexpected end of file, expected {expected_key!r}")
        if tokens[0] != expected_key or len(tokens) != count:
            raise ParseError(line, f"expected {expected_key!r} with {count - 1} value(s), got {' '.join(tokens)!r}")
        self.cursor += 1
        return line, tokens


def _int_token(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {token!r}") from None


def import_series(text: str) -> JacobiSeries | SiegelSeries:
    """Parse a coefficient file; rejects anything outside the canonical shape."""
    reader = _Reader(text)
    line, tokens = reader.peek()
    if tokens is None:
        raise ParseError(1, "empty file")
    if tokens != [FORMAT_TAG, str(FORMAT_VERSION)]:
        raise ParseError(line, f"expected header {FORMAT_TAG!r} {FORMAT_VERSION}, got {' '.join(tokens)!r}")
    reader.cursor += 1

    line, tokens = reader.take("kind", 2)
    kind = tokens[1]
    if kind not in ("jacobi", "siegel"):
        raise ParseError(line, f"unknown kind {kind!r}")
    line, tokens = reader.take("weight", 2)
    weight = _int_token(tokens[1], line, "weight")
    index = None
    if kind == "jacobi":
        line, tokens = reader.take("index", 2)
        index = _int_token(tokens[1], line, "index")
        if index < 0:
            raise ParseError(line, f"index must be non-negative, got {index}")
    line, tokens = reader.take("trunc", 2)
    trunc = _int_token(tokens[1], line, "trunc")
    if trunc < 0:
        raise ParseError(line, f"trunc must be non-negative, got {trunc}")

    key_width = 2 if kind == "jacobi" else 3
    coeffs = {}
    last_key = None
    while True:
        line, tokens = reader.peek()
        if tokens is None:
            raise ParseError(line or 1, "missing END terminator")
        if tokens[0] != "coeff":
            break
        if len(tokens) != key_width + 2:
            raise ParseError(line, f"coeff record needs {key_width} key integers and a value")
        key = tuple(_int_token(t, line, "coefficient key") for t in tokens[1 : 1 + key_width])
        for position in (0,) if kind == "jacobi" else (0, 2):
            if not 0 <= key[position] <= trunc:
                raise ParseError(line, f"key entry {key[position]} outside truncation {trunc}")
        if last_key is not None and key <= last_key:
            raise ParseError(line, f"records out of order: {key} after {last_key}")
        last_key = key
        coeffs[key] = parse_rational_token(tokens[1 + key_width], line)
        reader.cursor += 1

    reader.take("END", 1)
    line, tokens = reader.peek()
    if tokens is not None:
        raise ParseError(line, f"content after END: {' '.join(tokens)!r}")

    if kind == "jacobi":
        return JacobiSeries(weight, index, trunc, coeffs)
    return SiegelSeries(weight, trunc, coeffs)


def write_series(path: str | Path, obj: JacobiSeries | SiegelSeries) -> None:
    Path(path).write_bytes(export_series(obj).encode("utf-8"))


def read_series(path: str | Path) -> JacobiSeries | SiegelSeries:
    return import_series(Path(path).read_text(encoding="utf-8"))
