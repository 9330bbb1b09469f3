"""Exact Gaussian elimination over a field of Python number objects.

Only used with exact rationals; float systems go through numpy.
"""

from __future__ import annotations

from collections.abc import Sequence

from .errors import SingularSystem


def _augment(matrix: Sequence[Sequence], rhs: Sequence | None) -> list[list]:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    rows = [list(row) for row in matrix]
    if rhs is not None:
        if len(rhs) != n:
            raise ValueError("rhs length does not match matrix")
        for row, v in zip(rows, rhs):
            row.append(v)
    return rows


def _eliminate(rows: list[list]) -> int:
    """Reduce ``rows`` to upper triangular form in place; return the row-swap sign."""
    n = len(rows)
    sign = 1
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {col}")
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        p = rows[col][col]
        for i in range(col + 1, n):
            factor = rows[i][col] / p
            if factor == 0:
                continue
            ri, rc = rows[i], rows[col]
            for j in range(col, len(ri)):
                ri[j] -= factor * rc[j]
    return sign


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve ``matrix @ x = rhs`` exactly."""
    rows = _augment(matrix, rhs)
    _eliminate(rows)
    n = len(rows)
    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = rows[i][n]
        for j in range(i + 1, n):
            acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return x


def det(matrix: Sequence[Sequence]):
    rows = _augment(matrix, None)
    try:
        sign = _eliminate(rows)
    except SingularSystem:
        return 0 * rows[0][0]
    out = rows[0][0] * sign
    for i in range(1, len(rows)):
        out *= rows[i][i]
    return out


def matvec(matrix: Sequence[Sequence], x: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, x)), 0 * x[0]) for row in matrix]
