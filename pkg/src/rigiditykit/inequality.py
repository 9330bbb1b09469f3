"""The fundamental inequality ``L(r) < 0`` and its audit trail.

For distinct ``lambda_1..lambda_n`` and a distinguished index ``r``::

    L(r) = sum over ordered p != q, both != r, of
           1 / [(l_r - l_p)(l_r - l_q) * prod_{k!=p}(l_k - l_p) * prod_{l!=q}(l_l - l_q)]

Substituting ``b_p = 1/(l_p - l_r)`` turns each summand into ``c_p c_q`` with
``c_p = d_p * prod_{k!=r} b_k`` and ``d_p = b_p**(n-1) / prod_{k!=p,r}(b_p - b_k)``,
so ``L(r) = (prod b)**2 * ((sum d)**2 - sum d**2)``.  The ``d_p`` are the
coefficients expressing ``x**(n-1)`` modulo ``prod (x - b_k)`` in the Lagrange
basis, which pins ``sum d_p = sum b_p``; an exponential bound then shows one
``d_p`` dominates that sum, making the bracket negative.

Indices ``r`` and ``p`` are 1-based in the public API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import polynomial
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    BoundViolation,
    DegenerateSpectrum,
    IdentityViolation,
    IndexOutOfRange,
    InequalityViolation,
)
from .spectral import Spectrum


def _check(s: Spectrum, r: int) -> int:
    if s.n < 3:
        raise DegenerateSpectrum(f"L(r) needs n >= 3 (the defining sum is empty for n = {s.n})")
    if isinstance(r, bool) or not isinstance(r, int) or not 1 <= r <= s.n:
        raise IndexOutOfRange(f"r must be an integer in 1..{s.n}, got {r!r}")
    return r - 1


def _agree(s: Spectrum, a, b, scale=None, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    if s.is_exact:
        return a == b
    ref = max(abs(a), abs(b), abs(scale) if scale is not None else 0.0)
    return abs(a - b) <= tol.identity_rel * ref


def _denominators(s: Spectrum, ri: int) -> dict[int, object]:
    """``(l_r - l_p) * prod_{k != p}(l_k - l_p)`` for every ``p != r`` (0-based keys)."""
    lam = s.values
    lr = lam[ri]
    out = {}
    for p, lp in enumerate(lam):
        if p == ri:
            continue
        prod = lr - lp
        for k, lk in enumerate(lam):
            if k != p:
                prod *= lk - lp
        out[p] = prod
    return out


def L_direct(s: Spectrum, r: int):
    """``L(r)`` summed straight from its definition over ordered pairs."""
    ri = _check(s, r)
    den = _denominators(s, ri)
    one, total = s.one, s.zero
    for p, dp in den.items():
        for q, dq in den.items():
            if p != q:
                total += one / (dp * dq)
    return total


@dataclass(frozen=True)
class BCDTransform:
    """The substituted quantities for one ``(spectrum, r)``.

    ``indices`` lists the 1-based ``p != r`` in increasing order; ``b``, ``c``
    and ``d`` are aligned with it.
    """

    r: int
    indices: tuple[int, ...]
    b: tuple
    c: tuple
    d: tuple
    B: object
    prod_b: object


def transform_bcd(s: Spectrum, r: int, tol: Tolerances = DEFAULT_TOLERANCES) -> BCDTransform:
    ri = _check(s, r)
    lam = s.values
    n = s.n
    others = [p for p in range(n) if p != ri]
    b = [s.one / (lam[p] - lam[ri]) for p in others]
    den = _denominators(s, ri)
    c = [s.one / den[p] for p in others]
    d = []
    for i, bp in enumerate(b):
        prod = s.one
        for k, bk in enumerate(b):
            if k != i:
                prod *= bp - bk
        d.append(bp ** (n - 1) / prod)
    prod_b = s.one
    for bk in b:
        prod_b *= bk
    for p, cp, dp in zip(others, c, d):
        if not _agree(s, cp, dp * prod_b, tol=tol):
            raise IdentityViolation(f"c_{p + 1} = {cp} but d_p * prod b = {dp * prod_b}")
    return BCDTransform(
        r=r,
        indices=tuple(p + 1 for p in others),
        b=tuple(b),
        c=tuple(c),
        d=tuple(d),
        B=sum(d, s.zero),
        prod_b=prod_b,
    )


def _factored(t: BCDTransform, zero):
    sum_d_sq = sum((x * x for x in t.d), zero)
    return t.prod_b * t.prod_b * (t.B * t.B - sum_d_sq), sum_d_sq


def L_factored(s: Spectrum, r: int):
    """``L(r) = (prod_{k!=r} b_k)**2 * ((sum d_p)**2 - sum d_p**2)``."""
    value, _ = _factored(transform_bcd(s, r), s.zero)
    return value


@dataclass(frozen=True)
class InterpolationReport:
    """Coefficient vectors (lowest degree first) and the three identity checks."""

    H: tuple
    lhs: tuple  # x**(n-1) - H(x)
    product: tuple  # prod_{k != r}(x - b_k)
    interpolates: bool
    polynomial_identity: bool
    B_equals_sum_b: bool

    @property
    def ok(self) -> bool:
        return self.interpolates and self.polynomial_identity and self.B_equals_sum_b


def _interpolation(s: Spectrum, t: BCDTransform, tol: Tolerances) -> InterpolationReport:
    b, d = t.b, t.d
    n = s.n
    H = [s.zero] * (n - 1)
    for q, dq in enumerate(d):
        basis = polynomial.from_roots((bk for k, bk in enumerate(b) if k != q), s.one)
        H = polynomial.add(H, polynomial.scale(basis, dq))
    interpolates = all(
        _agree(s, polynomial.evaluate(H, bp), bp ** (n - 1), tol=tol) for bp in b
    )
    lhs = polynomial.add(polynomial.monomial(n - 1, s.one), polynomial.scale(H, -s.one))
    product = polynomial.from_roots(b, s.one)
    scale = max((abs(x) for x in product), default=s.zero)
    poly_ok = len(lhs) == len(product) and all(
        _agree(s, x, y, scale, tol) for x, y in zip(lhs, product)
    )
    sum_b = sum(b, s.zero)
    # x**(n-2) coefficient: -B on the left, -sum b on the right
    B_ok = _agree(s, t.B, sum_b, tol=tol) and _agree(s, lhs[n - 2], -sum_b, tol=tol)
    return InterpolationReport(tuple(H), tuple(lhs), tuple(product), interpolates, poly_ok, B_ok)


def check_interpolation_identity(s: Spectrum, r: int, tol: Tolerances = DEFAULT_TOLERANCES) -> InterpolationReport:
    """Build ``H(x) = sum_q d_q prod_{k!=q,r}(x - b_k)`` and check it.

    Checks ``H(b_p) = b_p**(n-1)``, ``x**(n-1) - H(x) = prod_{k!=r}(x - b_k)``
    coefficientwise, and ``B = sum b_p``.  Raises :class:`IdentityViolation`
    if any of them fails.
    """
    report = _interpolation(s, transform_bcd(s, r, tol), tol)
    if not report.ok:
        raise IdentityViolation(f"interpolation identity failed for {s}, r={r}: {report}")
    return report


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class BoundChainReport:
    """Float evaluation of the exponential bound argument.

    ``branch`` is ``"max"`` when ``B > 0`` (``p0`` maximises ``b``) and
    ``"min"`` when ``B <= 0`` (``p0`` minimises ``b``).  The min branch runs the
    same checks on ``-b``, which flips the sign of every ``d_p`` and of ``B``.
    """

    branch: str
    p0: int
    b_p0: float
    B: float
    d_p0: float
    checks: tuple[BoundCheck, ...] = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)


def _bound_chain(s: Spectrum, t: BCDTransform, tol: Tolerances) -> BoundChainReport:
    margin = tol.strictness_margin
    bf = [float(x) for x in t.b]
    Bf = float(t.B)
    if t.B > 0:
        branch, sign = "max", 1.0
        i0 = max(range(len(t.b)), key=t.b.__getitem__)
    else:
        branch, sign = "min", -1.0
        i0 = min(range(len(t.b)), key=t.b.__getitem__)
    # mirrored quantities: beta = sign * b, Bm = sign * B, dm = sign * d
    beta = [sign * x for x in bf]
    top = beta[i0]
    Bm = sign * Bf
    b = "b" if branch == "max" else "(-b)"
    checks = [BoundCheck(f"{b}_p0 > 0", top, 0.0, top > 0)]

    for k, bk in enumerate(beta):
        if k == i0:
            continue
        u = bk / top
        lhs = top - bk
        rhs = top * math.exp(-u)
        # exp(-u) - (1 - u) without cancellation
        gap = math.expm1(-u) + u
        checks.append(
            BoundCheck(
                f"{b}_p0 - {b}_{t.indices[k]} < {b}_p0 exp(-{b}_{t.indices[k]}/{b}_p0)",
                lhs,
                rhs,
                gap > margin * math.exp(-u),
            )
        )

    v = Bm / top - 1.0
    rhs = top * math.exp(v)
    # exp(v) - (1 + v) >= 0, tight at v = 0
    gap = math.expm1(v) - v
    B = "B" if branch == "max" else "(-B)"
    checks.append(BoundCheck(f"{B} <= {b}_p0 exp({B}/{b}_p0 - 1)", Bm, rhs, gap >= -margin * max(1.0, abs(v + 1.0))))

    d0 = t.d[i0]
    if s.is_exact:
        dominates = sign * d0 > sign * t.B
    else:
        dm = sign * d0
        dominates = dm - Bm > margin * abs(dm)
    name = "d_p0 > B" if branch == "max" else "|d_p0| > |B|"
    checks.append(BoundCheck(name, abs(float(d0)), abs(Bf), dominates))
    return BoundChainReport(branch, t.indices[i0], bf[i0], Bf, float(d0), tuple(checks))


def verify_exponential_bound_chain(s: Spectrum, r: int, tol: Tolerances = DEFAULT_TOLERANCES) -> BoundChainReport:
    """Evaluate each step of the exponential bound in float64.

    Raises :class:`BoundViolation` if a step fails by more than
    ``tol.strictness_margin`` (relative).  The final dominance ``d_p0 > B`` is
    decided exactly when the spectrum is exact.
    """
    report = _bound_chain(s, transform_bcd(s, r, tol), tol)
    if not report.holds:
        failed = [c.name for c in report.checks if not c.holds]
        raise BoundViolation(f"bound chain failed for {s}, r={r}: {failed}")
    return report


@dataclass(frozen=True)
class InequalityCertificate:
    spectrum: Spectrum
    r: int
    transform: BCDTransform
    sum_d_sq: object
    L_direct: object
    L_factored: object
    interpolation: InterpolationReport
    bound_chain: BoundChainReport
    identity_flags: dict[str, bool]

    @property
    def L(self):
        return self.L_direct

    @property
    def b(self) -> tuple:
        return self.transform.b

    @property
    def c(self) -> tuple:
        return self.transform.c

    @property
    def d(self) -> tuple:
        return self.transform.d

    @property
    def B(self):
        return self.transform.B


def certify(s: Spectrum, r: int, tol: Tolerances = DEFAULT_TOLERANCES) -> InequalityCertificate:
    """Run every check for one ``(spectrum, r)`` and return the audit trail.

    >>> cert = certify(Spectrum.exact([0, 1, 2]), 1)
    >>> str(cert.L)
    '-1/2'
    """
    if not s.is_exact:
        raise TypeError("certify needs an exact-rational spectrum")
    direct = L_direct(s, r)
    t = transform_bcd(s, r, tol)
    factored, sum_d_sq = _factored(t, s.zero)
    interp = _interpolation(s, t, tol)
    chain = _bound_chain(s, t, tol)
    flags = {
        "c_equals_d_times_prod_b": True,  # transform_bcd raises otherwise
        "L_direct_equals_L_factored": direct == factored,
        "H_interpolates": interp.interpolates,
        "polynomial_identity": interp.polynomial_identity,
        "B_equals_sum_b": interp.B_equals_sum_b,
        "sum_d_sq_exceeds_B_sq": sum_d_sq > t.B * t.B,
        "bound_chain": chain.holds,
        "L_negative": direct < 0,
    }
    if not (flags["L_direct_equals_L_factored"] and interp.ok):
        bad = [k for k, v in flags.items() if not v]
        raise IdentityViolation(f"identities failed for {s}, r={r}: {bad}")
    if not chain.holds:
        failed = [c.name for c in chain.checks if not c.holds]
        raise BoundViolation(f"bound chain failed for {s}, r={r}: {failed}")
    if not (flags["L_negative"] and flags["sum_d_sq_exceeds_B_sq"]):
        raise InequalityViolation(f"L({r}) = {direct} is not negative for {s}")
    return InequalityCertificate(s, r, t, sum_d_sq, direct, factored, interp, chain, flags)
