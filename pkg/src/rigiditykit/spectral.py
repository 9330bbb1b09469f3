"""Spectra, power sums, Newton's identities and multiplicity recovery.

Two scalar kinds are supported.  Exact rationals are ``gmpy2.mpq`` (always
reduced, denominator positive); floats are finite ``float`` values.  A
:class:`Spectrum` holds values of one kind only, and every operation returns
values of that same kind.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import gmpy2
import numpy as np
from gmpy2 import mpq

from . import linalg, polynomial
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DegenerateSpectrum, NonIntegralSolution, SingularSystem

MPQ = type(mpq(0))


class Kind(enum.Enum):
    EXACT = "exact-rational"
    FLOAT = "float64"


def to_exact(x) -> mpq:
    """Convert an int, ``Fraction``, ``mpq`` or ``"p/q"`` string to ``mpq``.

    Floats are refused: an exact path must never start from a rounded value.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, MPQ):
        return x
    if isinstance(x, (int, type(gmpy2.mpz(0)))):
        return mpq(x)
    if isinstance(x, Fraction) or (isinstance(x, Rational) and not isinstance(x, float)):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def parse_rational(text: str) -> mpq:
    """Parse ``"p"`` or ``"p/q"`` with integer ``p``, ``q``."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(p, q)


def to_float(x) -> float:
    v = float(x)
    if not math.isfinite(v):
        raise ValueError(f"non-finite float scalar: {x!r}")
    return v


def kind_of(x) -> Kind:
    if isinstance(x, float):
        return Kind.FLOAT
    return Kind.EXACT


def coerce(x, kind: Kind):
    return to_exact(x) if kind is Kind.EXACT else to_float(x)


def format_scalar(x) -> str:
    """Exact values as ``"p/q"`` (or ``"p"``), floats with 17 significant digits."""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass(frozen=True)
class Spectrum:
    """An ordered tuple of ``n >= 2`` pairwise distinct eigenvalues.

    >>> Spectrum.exact([0, 1, 2]).n
    3
    """

    values: tuple
    kind: Kind
    distinctness_tolerance: float = field(default=DEFAULT_TOLERANCES.distinctness, compare=False, repr=False)

    def __post_init__(self) -> None:
        vals = tuple(coerce(v, self.kind) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise DegenerateSpectrum(f"spectrum needs at least 2 values, got {len(vals)}")
        if self.kind is Kind.EXACT:
            if len(set(vals)) != len(vals):
                raise DegenerateSpectrum(f"repeated eigenvalue in {self}")
        else:
            gap = min_gap(vals)
            if gap <= self.distinctness_tolerance:
                raise DegenerateSpectrum(
                    f"eigenvalues closer than {self.distinctness_tolerance:g} (min gap {gap:.3g})"
                )

    @classmethod
    def exact(cls, values: Iterable) -> Spectrum:
        return cls(tuple(values), Kind.EXACT)

    @classmethod
    def floats(cls, values: Iterable, tol: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
        return cls(tuple(values), Kind.FLOAT, tol.distinctness)

    @classmethod
    def of_kind(cls, values: Iterable, kind: Kind, tol: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
        return cls(tuple(values), kind, tol.distinctness)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def is_exact(self) -> bool:
        return self.kind is Kind.EXACT

    @property
    def zero(self):
        return mpq(0) if self.is_exact else 0.0

    @property
    def one(self):
        return mpq(1) if self.is_exact else 1.0

    def coerce(self, x):
        return coerce(x, self.kind)

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self) -> str:
        return "(" + ", ".join(format_scalar(v) for v in self.values) + ")"

    def shifted(self, t) -> Spectrum:
        t = self.coerce(t)
        return Spectrum([v + t for v in self.values], self.kind, self.distinctness_tolerance)

    def scaled(self, t) -> Spectrum:
        t = self.coerce(t)
        return Spectrum([v * t for v in self.values], self.kind, self.distinctness_tolerance)

    def permuted(self, perm: Sequence[int]) -> Spectrum:
        """Spectrum with ``values[perm[i]]`` at position ``i`` (0-based)."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        return Spectrum(tuple(self.values[p] for p in perm), self.kind, self.distinctness_tolerance)


def min_gap(values: Sequence[float]) -> float:
    ordered = sorted(values)
    return min(b - a for a, b in zip(ordered, ordered[1:]))


@dataclass(frozen=True)
class PowerSums:
    """``values[k - 1] = sum_i lambda_i**k`` for ``k = 1..m``."""

    values: tuple
    kind: Kind

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("power sums need m >= 1")

    @property
    def m(self) -> int:
        return len(self.values)

    def p(self, k: int):
        if not 1 <= k <= self.m:
            raise IndexError(f"p_{k} not available (m = {self.m})")
        return self.values[k - 1]


def power_sums(s: Spectrum | Sequence, m: int) -> PowerSums:
    if m < 1:
        raise ValueError("m must be >= 1")
    vals = tuple(s)
    kind = s.kind if isinstance(s, Spectrum) else kind_of(vals[0])
    zero = mpq(0) if kind is Kind.EXACT else 0.0
    sums = [zero] * m
    for v in vals:
        power = v
        for k in range(m):
            sums[k] += power
            power *= v
    return PowerSums(tuple(sums), kind)


def newton_power_to_elementary(p: PowerSums | Sequence, n: int) -> list:
    """Elementary symmetric values ``e_1..e_n`` from power sums ``p_1..p_n``.

    Uses ``k e_k = sum_{i=1..k} (-1)**(i-1) e_{k-i} p_i`` with ``e_0 = 1``.
    """
    ps = p.values if isinstance(p, PowerSums) else tuple(p)
    if len(ps) < n:
        raise ValueError(f"need at least {n} power sums, got {len(ps)}")
    one = mpq(1) if kind_of(ps[0]) is Kind.EXACT else 1.0
    e = [one]
    for k in range(1, n + 1):
        acc = 0 * one
        for i in range(1, k + 1):
            term = e[k - i] * ps[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc / k)
    return e[1:]


def characteristic_polynomial(e: Sequence) -> list:
    """Coefficients (lowest first) of ``x**n - e_1 x**(n-1) + ... + (-1)**n e_n``."""
    n = len(e)
    one = e[0] * 0 + 1
    coeffs = [0 * one] * n + [one]
    for k, ek in enumerate(e, start=1):
        coeffs[n - k] = ek if k % 2 == 0 else -ek
    return coeffs


@dataclass(frozen=True)
class MultiplicityProfile:
    """``g`` distinct values with positive integer multiplicities."""

    values: tuple
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.multiplicities) or not self.values:
            raise ValueError("values and multiplicities must be non-empty and of equal length")
        if any(not isinstance(m, int) or isinstance(m, bool) or m < 1 for m in self.multiplicities):
            raise ValueError(f"multiplicities must be positive integers: {self.multiplicities}")
        if len(set(self.values)) != len(self.values):
            raise ValueError("profile values must be pairwise distinct")

    @property
    def g(self) -> int:
        return len(self.values)

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> tuple:
        return tuple(v for v, m in zip(self.values, self.multiplicities) for _ in range(m))

    def power_sums(self, m: int) -> PowerSums:
        return power_sums(self.expanded(), m)


def solve_multiplicities(values: Sequence, c: Sequence, tol: Tolerances = DEFAULT_TOLERANCES) -> MultiplicityProfile:
    """Recover multiplicities ``m`` from ``sum_i m_i values_i**k = c_k``, ``k = 1..g``.

    The kind is taken from ``values[0]``.  Exact input is solved exactly and the
    solution must already be a positive integer vector.  Float input is solved
    in floating point, rounded, and accepted only if substituting the rounded
    multiplicities reproduces every ``c_k`` within ``tol.residual``.
    """
    g = len(values)
    if g == 0 or len(c) != g:
        raise ValueError("need g >= 1 values and exactly g constraints")
    kind = kind_of(values[0])
    vals = [coerce(v, kind) for v in values]
    cs = [coerce(v, kind) for v in c]
    if len(set(vals)) != g:
        raise SingularSystem("multiplicity system is singular: repeated values")
    if any(v == 0 for v in vals):
        # the column of a zero value vanishes for every k >= 1
        raise SingularSystem("multiplicity system is singular: a value is zero")
    rows = [[v**k for v in vals] for k in range(1, g + 1)]

    if kind is Kind.EXACT:
        m = linalg.solve(rows, cs)
        if any(x.denominator != 1 or x < 1 for x in m):
            raise NonIntegralSolution(
                "no positive integer multiplicities: solution is ("
                + ", ".join(str(x) for x in m) + ")"
            )
        ints = tuple(int(x) for x in m)
    else:
        try:
            m = np.linalg.solve(np.array(rows, dtype=float), np.array(cs, dtype=float))
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(str(exc)) from None
        ints = tuple(int(round(x)) for x in m)
        if any(k < 1 for k in ints):
            raise NonIntegralSolution(f"rounded multiplicities not positive: {ints} from {m.tolist()}")
        resid = [abs(sum(k * v**j for k, v in zip(ints, vals)) - cj) for j, cj in enumerate(cs, start=1)]
        if max(resid) > tol.residual:
            raise NonIntegralSolution(
                f"rounded multiplicities {ints} miss the constraints by {max(resid):.3g}"
            )
    return MultiplicityProfile(tuple(vals), ints)


def roots_check(s: Spectrum) -> list:
    """Evaluate the characteristic polynomial recovered from power sums at each value."""
    e = newton_power_to_elementary(power_sums(s, s.n), s.n)
    chi = characteristic_polynomial(e)
    return [polynomial.evaluate(chi, v) for v in s.values]
