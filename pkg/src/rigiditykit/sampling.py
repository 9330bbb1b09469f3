"""Seeded random exact-rational spectra.

Every sample gets its own generator derived from ``(seed, *key)`` through
``numpy.random.SeedSequence``, so results do not depend on the order (or
process) in which trials run.
"""

from __future__ import annotations

import numpy as np
from gmpy2 import mpq

from .spectral import Spectrum


def rng_for(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


def random_rational(rng: np.random.Generator, bound: int) -> mpq:
    """Numerator uniform on ``[-bound, bound] \\ {0}``, denominator uniform on ``[1, bound]``."""
    num = int(rng.integers(1, bound, endpoint=True))
    if rng.integers(2):
        num = -num
    den = int(rng.integers(1, bound, endpoint=True))
    return mpq(num, den)


def random_distinct_rationals(rng: np.random.Generator, n: int, bound: int) -> list[mpq]:
    """``n`` distinct rationals, resampling any value already drawn."""
    if bound < 1:
        raise ValueError("rational bound must be positive")
    out: list[mpq] = []
    seen: set[mpq] = set()
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 1000 * n:
            raise ValueError(f"cannot draw {n} distinct rationals with bound {bound}")
        x = random_rational(rng, bound)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def random_spectrum(seed: int, n: int, trial: int, bound: int = 50) -> Spectrum:
    return Spectrum.exact(random_distinct_rationals(rng_for(seed, n, trial), n, bound))
