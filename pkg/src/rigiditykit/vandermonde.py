"""Eigenvalue derivatives from the Vandermonde system.

Differentiating ``sum_i lambda_i**k = const`` (``k < n``) together with
``sum_i lambda_i**n = f`` along a frame direction ``j`` gives
``D x = (0, ..., 0, f_j / n)`` where ``D`` has rows ``lambda**0 .. lambda**(n-1)``
and ``x_i = lambda_ij``.  The solution has the closed form

    lambda_ij = (-1)**(n+1) * (f_j / n) / prod_{k != i}(lambda_k - lambda_i)

which is cross-checked here against a plain linear solve.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import linalg
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import IdentityViolation, IllConditioned
from .spectral import Spectrum


def vandermonde_matrix(s: Spectrum) -> list[list]:
    """Row ``k`` is ``(lambda_1**k, ..., lambda_n**k)`` for ``k = 0..n-1``."""
    rows = [[s.one] * s.n]
    for _ in range(1, s.n):
        rows.append([a * v for a, v in zip(rows[-1], s.values)])
    return rows


def vandermonde_det(s: Spectrum):
    """``prod_{k > l}(lambda_k - lambda_l)``, cross-checked by elimination for exact input."""
    lam = s.values
    gamma = s.one
    for k in range(s.n):
        for l in range(k):
            gamma *= lam[k] - lam[l]
    if gamma == 0:
        raise IdentityViolation(f"Vandermonde determinant vanished for {s}")
    if s.is_exact:
        by_elim = linalg.det(vandermonde_matrix(s))
        if by_elim != gamma:
            raise IdentityViolation(f"product formula {gamma} != elimination {by_elim}")
    return gamma


@dataclass(frozen=True)
class DerivativeSolution:
    """``lambda_derivs[i]`` is ``lambda_{i+1, j}`` for the driving component ``f_j``.

    ``residual`` is the max-norm of ``D x - rhs``; it is ``None`` for exact
    solutions, where :meth:`moments` must match the right-hand side exactly.
    """

    spectrum: Spectrum
    lambda_derivs: tuple
    f_j: object
    residual: float | None = None

    def moments(self) -> list:
        """``sum_i lambda_i**s * lambda_ij`` for ``s = 0..n-1``."""
        return linalg.matvec(vandermonde_matrix(self.spectrum), self.lambda_derivs)

    def rhs(self) -> list:
        s = self.spectrum
        return [s.zero] * (s.n - 1) + [self.f_j / s.n]

    def moments_hold(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        got, want = self.moments(), self.rhs()
        if self.spectrum.is_exact:
            return got == want
        return max(abs(a - b) for a, b in zip(got, want)) <= tol.residual


def _rhs(s: Spectrum, f_j) -> list:
    return [s.zero] * (s.n - 1) + [f_j / s.n]


def solve_derivatives_generic(s: Spectrum, f_j, tol: Tolerances = DEFAULT_TOLERANCES) -> DerivativeSolution:
    """Solve ``D x = (0, ..., f_j/n)`` by elimination.

    Exact spectra use exact Gaussian elimination.  Float spectra use LAPACK's
    partially pivoted LU; if the residual exceeds ``tol.residual`` an
    :class:`IllConditioned` warning is issued and the solution still returned.
    """
    f_j = s.coerce(f_j)
    D = vandermonde_matrix(s)
    rhs = _rhs(s, f_j)
    if s.is_exact:
        x = linalg.solve(D, rhs)
        return DerivativeSolution(s, tuple(x), f_j)
    A = np.array(D, dtype=float)
    bvec = np.array(rhs, dtype=float)
    x = np.linalg.solve(A, bvec)
    residual = float(np.max(np.abs(A @ x - bvec)))
    if residual > tol.residual:
        warnings.warn(
            f"Vandermonde residual {residual:.3g} exceeds {tol.residual:g} for {s}",
            IllConditioned,
            stacklevel=2,
        )
    return DerivativeSolution(s, tuple(float(v) for v in x), f_j, residual)


def _closed_form(s: Spectrum, f_j) -> list:
    lam = s.values
    n = s.n
    scale = f_j / n if n % 2 else -(f_j / n)  # (-1)**(n+1)
    out = []
    for i, li in enumerate(lam):
        prod = s.one
        for k, lk in enumerate(lam):
            if k != i:
                prod *= lk - li
        out.append(scale / prod)
    return out


def derivatives_closed_form(s: Spectrum, f_j) -> DerivativeSolution:
    """``lambda_ij = (-1)**(n+1) (f_j/n) / prod_{k!=i}(lambda_k - lambda_i)``."""
    f_j = s.coerce(f_j)
    x = _closed_form(s, f_j)
    residual = None
    if not s.is_exact:
        residual = float(np.max(np.abs(np.array(vandermonde_matrix(s)) @ np.array(x) - np.array(_rhs(s, f_j)))))
    return DerivativeSolution(s, tuple(x), f_j, residual)
