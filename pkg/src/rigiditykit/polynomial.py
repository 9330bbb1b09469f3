"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients may be any field elements (``mpq``, ``Fraction``, ``float``);
nothing here rounds.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


def from_roots(roots: Iterable, one=1) -> list:
    """Coefficients of the monic polynomial ``prod (x - root)``."""
    coeffs = [one]
    for root in roots:
        shifted = [0 * one] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= c * root
        coeffs = shifted
    return coeffs


def evaluate(coeffs: Sequence, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def add(a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return out


def scale(a: Sequence, k) -> list:
    return [c * k for c in a]


def monomial(degree: int, one=1) -> list:
    return [0 * one] * degree + [one]


def trim(a: Sequence) -> list:
    """Drop zero leading coefficients (keeps at least one entry)."""
    out = list(a)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
