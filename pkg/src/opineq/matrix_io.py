"""Plain-text matrix files.

Format::

    # comment lines start with '#'; blank lines are ignored
    rows cols
    re im  re im ...     (rows*cols entries, row-major, any line breaking)

Entries are written with 17 significant digits, so reading a written file
reproduces every finite double exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import MatrixParseError

__all__ = ["parse_matrix", "serialize_matrix", "read_matrix", "write_matrix"]


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for tok in stripped.split():
            yield lineno, tok


def _number(lineno: int, tok: str) -> float:
    try:
        value = float(tok)
    except ValueError:
        raise MatrixParseError(lineno, f"not a number: {tok!r}") from None
    if not np.isfinite(value):
        raise MatrixParseError(lineno, f"non-finite value: {tok!r}")
    return value


def parse_matrix(text: str) -> np.ndarray:
    toks = list(_tokens(text))
    if len(toks) < 2:
        line = toks[0][0] if toks else max(1, len(text.splitlines()))
        raise MatrixParseError(line, "missing 'rows cols' header")
    (l1, t1), (l2, t2) = toks[0], toks[1]
    if l1 != l2:
        raise MatrixParseError(l1, "header must hold 'rows cols' on one line")
    try:
        rows, cols = int(t1), int(t2)
    except ValueError:
        raise MatrixParseError(l1, f"header must be two integers, got {t1!r} {t2!r}") from None
    if rows < 1 or cols < 1:
        raise MatrixParseError(l1, f"dimensions must be positive, got {rows} x {cols}")
    body = toks[2:]
    if body and body[0][0] == l1:
        raise MatrixParseError(l1, "header line must contain exactly two integers")
    need = 2 * rows * cols
    if len(body) != need:
        line = body[-1][0] if body else l1
        raise MatrixParseError(line, f"expected {need} numbers ({rows}x{cols} complex entries), found {len(body)}")
    values = np.array([_number(ln, tok) for ln, tok in body], dtype=np.float64)
    out = np.empty(rows * cols, dtype=np.complex128)
    # assign parts directly; re + 1j * im would turn -0.0 into 0.0
    out.real = values[0::2]
    out.imag = values[1::2]
    return out.reshape(rows, cols)


def serialize_matrix(m, comment: str | None = None) -> str:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{m.shape[0]} {m.shape[1]}")
    for row in m:
        lines.append("  ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row))
    return "\n".join(lines) + "\n"


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, m, comment: str | None = None) -> None:
    Path(path).write_text(serialize_matrix(m, comment))
