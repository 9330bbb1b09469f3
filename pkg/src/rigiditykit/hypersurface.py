"""Isoparametric hypersurfaces in the unit sphere, at the level of spectra.

A family with ``g`` distinct principal curvatures is parametrised by the tube
angle ``theta`` in ``(0, pi/g)``; its curvatures are
``cot(theta + k pi / g)`` for ``k = 0..g-1``, each repeated by its
multiplicity.  Scalar curvature comes from the Gauss equation
``R = n(n-1) + H**2 - S`` with ``H = sum lambda`` and ``S = sum lambda**2``.
Everything here is float64.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ConvergenceFailure, InvalidRange, PoleProximity
from .spectral import MultiplicityProfile, min_gap

ALLOWED_G = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class IsoparametricFamily:
    n: int
    g: int
    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if self.g not in ALLOWED_G:
            raise InvalidRange(f"g must be one of {ALLOWED_G}, got {self.g}")
        if len(self.multiplicities) != self.g or any(m < 1 for m in self.multiplicities):
            raise InvalidRange(f"need {self.g} positive multiplicities, got {self.multiplicities}")
        if sum(self.multiplicities) != self.n:
            raise InvalidRange(f"multiplicities {self.multiplicities} do not sum to n = {self.n}")

    @classmethod
    def simple(cls, g: int) -> IsoparametricFamily:
        """The family with ``g`` simple principal curvatures (``n = g``)."""
        return cls(g, g, (1,) * g)

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    @property
    def theta_domain(self) -> tuple[float, float]:
        return 0.0, math.pi / self.g

    def trimmed_domain(self, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[float, float]:
        lo, hi = self.theta_domain
        return lo + tol.pole_margin, hi - tol.pole_margin


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def distinct_curvatures(fam: IsoparametricFamily, theta: float, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[float, ...]:
    lo, hi = fam.trimmed_domain(tol)
    if not lo <= theta <= hi:
        raise PoleProximity(
            f"theta = {theta!r} is within {tol.pole_margin:g} of the domain ends (0, pi/{fam.g})"
        )
    vals = tuple(_cot(theta + k * math.pi / fam.g) for k in range(fam.g))
    if fam.g > 1 and min_gap(vals) <= tol.distinctness:
        raise PoleProximity(f"principal curvatures not distinct at theta = {theta!r}")
    return vals


def principal_curvatures(fam: IsoparametricFamily, theta: float, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[float, ...]:
    """All ``n`` principal curvatures at ``theta``, multiplicities expanded.

    For a simple family the result is a valid float :class:`Spectrum`
    (``Spectrum.floats(principal_curvatures(...))``).
    """
    vals = distinct_curvatures(fam, theta, tol)
    return tuple(v for v, m in zip(vals, fam.multiplicities) for _ in range(m))


def gauss_scalar_curvature(lambdas: Sequence[float], n: int | None = None) -> float:
    """``n(n-1) + (sum lambda)**2 - sum lambda**2`` for a hypersurface of the unit sphere."""
    vals = [float(x) for x in lambdas]
    if n is None:
        n = len(vals)
    elif n != len(vals):
        raise ValueError(f"expected {n} principal curvatures, got {len(vals)}")
    H = math.fsum(vals)
    S = math.fsum(x * x for x in vals)
    return n * (n - 1) + H * H - S


@dataclass(frozen=True)
class CurvatureReport:
    theta: float
    lambdas: tuple[float, ...]
    H: float
    S: float
    R: float


def curvature_report(fam: IsoparametricFamily, theta: float, tol: Tolerances = DEFAULT_TOLERANCES) -> CurvatureReport:
    lam = principal_curvatures(fam, theta, tol)
    H = math.fsum(lam)
    S = math.fsum(x * x for x in lam)
    return CurvatureReport(theta, lam, H, S, fam.n * (fam.n - 1) + H * H - S)


def clifford_torus_spectrum(n: int, r: int) -> MultiplicityProfile:
    """Principal curvatures of the minimal Clifford torus ``S^r x S^(n-r)`` in ``S^(n+1)``."""
    if not 0 < r < n:
        raise InvalidRange(f"Clifford torus needs 0 < r < n, got n = {n}, r = {r}")
    return MultiplicityProfile(
        (math.sqrt((n - r) / r), -math.sqrt(r / (n - r))),
        (r, n - r),
    )


def mean_curvature_sum(fam: IsoparametricFamily, theta: float) -> float:
    """``p_1(theta) = sum_k m_k cot(theta + k pi/g)``; strictly decreasing in ``theta``."""
    return math.fsum(
        m * _cot(theta + k * math.pi / fam.g) for k, m in enumerate(fam.multiplicities)
    )


def find_minimal_theta(fam: IsoparametricFamily, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """The unique ``theta`` in the family's domain with ``p_1(theta) = 0``, by bisection."""
    lo, hi = fam.trimmed_domain(tol)
    f_lo, f_hi = mean_curvature_sum(fam, lo), mean_curvature_sum(fam, hi)
    if not (f_lo > 0 > f_hi):
        raise ConvergenceFailure(f"p_1 does not change sign on [{lo}, {hi}]")
    try:
        theta, info = optimize.bisect(
            lambda t: mean_curvature_sum(fam, t),
            lo,
            hi,
            xtol=tol.bisection,
            rtol=4 * np.finfo(float).eps,
            maxiter=tol.max_iterations,
            full_output=True,
            disp=False,
        )
    except RuntimeError as exc:
        raise ConvergenceFailure(str(exc)) from None
    if not info.converged:
        raise ConvergenceFailure(f"bisection stopped after {info.iterations} iterations")
    return float(theta)


def sample_thetas(fam: IsoparametricFamily, count: int, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Midpoints of ``count`` equal cells of the pole-trimmed domain."""
    if count < 1:
        raise InvalidRange("sample count must be positive")
    lo, hi = fam.trimmed_domain(tol)
    return lo + (np.arange(count) + 0.5) * (hi - lo) / count


@dataclass(frozen=True)
class RemarkReport:
    family: IsoparametricFamily
    rows: tuple[CurvatureReport, ...]
    max_abs_R: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_R <= self.tolerance


def verify_remark(fam: IsoparametricFamily, sample_count: int, tol: Tolerances = DEFAULT_TOLERANCES) -> RemarkReport:
    """Sweep ``theta`` across the family and record ``max |R(theta)|``.

    For simple families ``R`` vanishes identically; ``passed`` reports whether
    the sweep stayed within ``tol.remark``.  Non-simple families can be swept
    too (as controls) and will generally not pass.
    """
    rows = tuple(curvature_report(fam, float(t), tol) for t in sample_thetas(fam, sample_count, tol))
    worst = max(abs(row.R) for row in rows)
    return RemarkReport(fam, rows, worst, tol.remark)
