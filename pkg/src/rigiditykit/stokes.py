"""The pointwise Stokes quantity ``A`` and the rigidity verdict.

``A`` is computed two independent ways:

* from ``L``: ``A = (n-3)!/n**2 * sum_r L(r) f_r**2``;
* from the eigenvalue derivatives: ``A = (n-3)! * sum over ordered distinct
  (p, q, r) of lambda_pr lambda_qr / ((l_r - l_p)(l_r - l_q))`` with
  ``lambda_pr`` taken from the closed-form Vandermonde solution driven by
  ``f_r``.

Since every ``L(r) < 0``, ``A <= 0`` with equality exactly when ``f = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateSpectrum, PositivityViolation
from .inequality import L_direct
from .spectral import Kind, Spectrum
from .vandermonde import derivatives_closed_form


@dataclass(frozen=True)
class GradientData:
    """Components ``f_1..f_n`` of ``df`` in the eigenframe."""

    f: tuple
    kind: Kind

    @classmethod
    def for_spectrum(cls, s: Spectrum, f) -> GradientData:
        vals = tuple(s.coerce(x) for x in f)
        if len(vals) != s.n:
            raise ValueError(f"gradient has {len(vals)} components, spectrum has {s.n}")
        return cls(vals, s.kind)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.f)


def _prepare(s: Spectrum, g) -> GradientData:
    if s.n < 3:
        raise DegenerateSpectrum(f"A needs n >= 3, got n = {s.n}")
    if not isinstance(g, GradientData) or g.kind is not s.kind:
        g = GradientData.for_spectrum(s, g.f if isinstance(g, GradientData) else g)
    elif len(g.f) != s.n:
        raise ValueError(f"gradient has {len(g.f)} components, spectrum has {s.n}")
    return g


def _prefactor(s: Spectrum, denominator: int):
    fact = math.factorial(s.n - 3)
    return s.coerce(fact) / denominator


def A_via_L(s: Spectrum, g) -> object:
    """``(n-3)!/n**2 * sum_r L(r) f_r**2``."""
    g = _prepare(s, g)
    total = s.zero
    for r, fr in enumerate(g.f, start=1):
        if fr != 0:
            total += L_direct(s, r) * fr * fr
    return _prefactor(s, s.n * s.n) * total


def A_via_triple_sum(s: Spectrum, g) -> object:
    """``(n-3)!`` times the ordered triple sum over derivative products."""
    g = _prepare(s, g)
    lam = s.values
    total = s.zero
    for r, fr in enumerate(g.f):
        derivs = derivatives_closed_form(s, fr).lambda_derivs  # lambda_{p r} for all p
        lr = lam[r]
        for p in range(s.n):
            if p == r:
                continue
            for q in range(s.n):
                if q == r or q == p:
                    continue
                total += derivs[p] * derivs[q] / ((lr - lam[p]) * (lr - lam[q]))
    return _prefactor(s, 1) * total


@dataclass(frozen=True)
class RigidityVerdict:
    A: object
    is_rigid: bool
    forced_f_zero: bool


def rigidity_verdict(s: Spectrum, g) -> RigidityVerdict:
    """Evaluate ``A`` and apply the rigidity conclusion ``A = 0 => f = 0``.

    Raises :class:`PositivityViolation` if ``A > 0`` or if ``A = 0`` and ``f = 0``
    disagree; on exact input neither can happen.
    """
    g = _prepare(s, g)
    A = A_via_L(s, g)
    if A > 0:
        raise PositivityViolation(f"A = {A} > 0 for {s}, f = {g.f}")
    is_rigid = A == 0
    if is_rigid != g.is_zero:
        raise PositivityViolation(f"A = {A} but f {'=' if g.is_zero else '!='} 0 for {s}")
    return RigidityVerdict(A, is_rigid, is_rigid)
