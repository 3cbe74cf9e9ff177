"""Instance file format: dimension, basis columns, optional target.

    # comment
    dim: 2
    1 0
    100/3 1
    t: 1/2 1/2

Each of the n data lines is one *column* of B; rationals are written as
"p/q" or plain integers.  UTF-8, '#' starts a comment.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .core import Basis, as_vector
from .errors import ParseError, RankDeficient


@dataclass(frozen=True)
class Instance:
    basis: Basis
    target: tuple | None
    content_hash: str


def _parse_rational(tok: str, lineno: int, col: int) -> Fraction:
    try:
        f = Fraction(tok)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {tok!r}: {e}", line=lineno, column=col)
    return f


def parse_instance(text: str, content_hash: str | None = None) -> Instance:
    if content_hash is None:
        content_hash = hashlib.sha256(text.encode()).hexdigest()
    dim = None
    rows: list[tuple[Fraction, ...]] = []
    target = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("dim:"):
            try:
                dim = int(line[4:].strip())
            except ValueError:
                raise ParseError(f"bad dimension {line[4:].strip()!r}", line=lineno)
            if dim < 1:
                raise ParseError("dim must be >= 1", line=lineno)
            continue
        if line.lower().startswith("t:"):
            toks = line[2:].split()
            target = tuple(_parse_rational(t, lineno, i + 1) for i, t in enumerate(toks))
            continue
        toks = line.split()
        rows.append(tuple(_parse_rational(t, lineno, i + 1) for i, t in enumerate(toks)))
    if dim is None:
        raise ParseError("missing 'dim:' header")
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ParseError(f"expected {dim} lines of {dim} rationals, got {[len(r) for r in rows]}")
    if target is not None and len(target) != dim:
        raise ParseError(f"target has {len(target)} entries, expected {dim}")
    try:
        basis = Basis(rows)  # each file line is a column
    except RankDeficient:
        raise
    return Instance(basis=basis, target=target, content_hash=content_hash)


def load_instance(path) -> Instance:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_instance(data.decode("utf-8"), hashlib.sha256(data).hexdigest())


def emit_instance(basis: Basis, target=None) -> str:
    lines = [f"dim: {basis.dim}"]
    for col in basis.columns:
        lines.append(" ".join(_fmt(x) for x in col))
    if target is not None:
        lines.append("t: " + " ".join(_fmt(x) for x in as_vector(target)))
    return "\n".join(lines) + "\n"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
