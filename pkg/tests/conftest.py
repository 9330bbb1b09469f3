"""Shared strategies and brute-force oracles.

The oracles use ``fractions.Fraction`` and plain enumeration so they share no
code path with the package under test.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from hypothesis import strategies as st

from rigiditykit.spectral import Spectrum


def rationals(bound: int = 30):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=bound)


def distinct_rationals(min_size: int, max_size: int, bound: int = 30):
    return st.lists(rationals(bound), min_size=min_size, max_size=max_size, unique=True)


def exact_spectra(min_size: int = 3, max_size: int = 6, bound: int = 30):
    return distinct_rationals(min_size, max_size, bound).map(Spectrum.exact)


def as_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def oracle_L(lams, r: int) -> Fraction:
    """L(r) summed from its definition, 1-based r."""
    lam = [Fraction(x) if not hasattr(x, "numerator") else as_fraction(x) for x in lams]
    n = len(lam)
    ri = r - 1
    total = Fraction(0)
    for p in range(n):
        for q in range(n):
            if p == q or p == ri or q == ri:
                continue
            den = (lam[ri] - lam[p]) * (lam[ri] - lam[q])
            for k in range(n):
                if k != p:
                    den *= lam[k] - lam[p]
            for l in range(n):
                if l != q:
                    den *= lam[l] - lam[q]
            total += 1 / den
    return total


def oracle_elementary(lams, k: int) -> Fraction:
    return sum(
        (math.prod(c, start=Fraction(1)) for c in itertools.combinations([as_fraction(x) for x in lams], k)),
        Fraction(0),
    )


def oracle_det(matrix) -> Fraction:
    """Leibniz expansion over all permutations."""
    n = len(matrix)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= as_fraction(matrix[i][j])
        total += term
    return total


def oracle_cramer_derivatives(lams, f_j) -> list[Fraction]:
    """Solve the Vandermonde system by Cramer's rule with Leibniz determinants."""
    lam = [as_fraction(x) for x in lams]
    n = len(lam)
    D = [[x**k for x in lam] for k in range(n)]
    rhs = [Fraction(0)] * (n - 1) + [as_fraction(f_j) / n]
    det = oracle_det(D)
    out = []
    for i in range(n):
        Di = [row[:i] + [rhs[k]] + row[i + 1 :] for k, row in enumerate(D)]
        out.append(oracle_det(Di) / det)
    return out


def oracle_A(lams, f) -> Fraction:
    """(n-3)! * ordered triple sum with derivatives from Cramer's rule."""
    lam = [as_fraction(x) for x in lams]
    n = len(lam)
    derivs = [oracle_cramer_derivatives(lams, fr) for fr in f]  # derivs[r][p] = lambda_{p r}
    total = Fraction(0)
    for p, q, r in itertools.permutations(range(n), 3):
        total += derivs[r][p] * derivs[r][q] / ((lam[r] - lam[p]) * (lam[r] - lam[q]))
    return math.factorial(n - 3) * total
