"""Plain-text dense matrix format.

The first line holds ``m n``; the next ``m`` lines hold ``n`` whitespace
separated decimals each (row-major, for humans). Blank lines and lines
starting with ``#`` are ignored.
"""
from __future__ import annotations

import io
import os

import numpy as np

from .linalg import InvalidInputError, as_matrix


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidInputError("empty matrix text")
    head = lines[0].split()
    if len(head) != 2:
        raise InvalidInputError(f"header must be 'm n', got {lines[0]!r}")
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise InvalidInputError(f"header must be two integers, got {lines[0]!r}") from None
    if m < 1 or n < 1:
        raise InvalidInputError(f"matrix dimensions must be positive, got {m}x{n}")
    body = lines[1:]
    if len(body) != m:
        raise InvalidInputError(f"expected {m} rows, found {len(body)}")
    rows = []
    for i, ln in enumerate(body):
        fields = ln.split()
        if len(fields) != n:
            raise InvalidInputError(f"row {i + 1}: expected {n} values, found {len(fields)}")
        try:
            rows.append([float(f) for f in fields])
        except ValueError as exc:
            raise InvalidInputError(f"row {i + 1}: {exc}") from None
    return as_matrix(np.array(rows, dtype=np.float64))


def format_matrix(M) -> str:
    A = np.asarray(M, dtype=np.float64)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    buf = io.StringIO()
    buf.write(f"{A.shape[0]} {A.shape[1]}\n")
    for row in A:
        buf.write(" ".join(repr(float(v)) for v in row))
        buf.write("\n")
    return buf.getvalue()


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path: str | os.PathLike, M) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(M))
