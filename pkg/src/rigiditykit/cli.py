"""Command-line front end.

Exit codes: 0 success, 1 a verified claim failed numerically, 2 bad input,
3 degenerate input (repeated eigenvalue, too few eigenvalues), 4 internal
identity violation.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from collections.abc import Sequence

from . import __version__
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    BoundViolation,
    ConvergenceFailure,
    DegenerateSpectrum,
    IdentityViolation,
    IndexOutOfRange,
    InequalityViolation,
    InvalidRange,
    ParseError,
    PoleProximity,
    PositivityViolation,
    RigidityError,
)
from .hypersurface import (
    IsoparametricFamily,
    clifford_torus_spectrum,
    curvature_report,
    find_minimal_theta,
    verify_remark,
)
from .inequality import L_direct, certify
from .report import Report, render
from .sampling import random_spectrum
from .spectral import Spectrum, parse_rational, power_sums
from .stokes import A_via_L, A_via_triple_sum, GradientData, rigidity_verdict
from .vandermonde import derivatives_closed_form, solve_derivatives_generic, vandermonde_det

SEED_ENV = "RIGIDITYKIT_SEED"
N_MIN, N_MAX = 3, 16

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_DEGENERATE, EXIT_IDENTITY = 0, 1, 2, 3, 4


def _rationals(text: str) -> list:
    try:
        return [parse_rational(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _floats(text: str) -> list[float]:
    try:
        vals = [float(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not all(math.isfinite(v) for v in vals):
        raise ParseError("non-finite value")
    return vals


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _n_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ParseError(f"bad n range {text!r}; expected N or A..B") from None
    if not N_MIN <= a <= b <= N_MAX:
        raise ParseError(f"n range must satisfy {N_MIN} <= A <= B <= {N_MAX}, got {text!r}")
    return a, b


def _seed(value: str | None) -> int:
    raw = value if value is not None else os.environ.get(SEED_ENV, "0")
    try:
        seed = int(raw)
    except ValueError:
        raise ParseError(f"seed must be an integer, got {raw!r}") from None
    if not 0 <= seed < 2**64:
        raise ParseError("seed must be a 64-bit unsigned integer")
    return seed


def _bcd_rows(cert) -> list[list]:
    t = cert.transform
    return [[p, b, c, d] for p, b, c, d in zip(t.indices, t.b, t.c, t.d)]


def cmd_certify(args: argparse.Namespace, tol: Tolerances) -> tuple[Report, int]:
    s = Spectrum.exact(_rationals(args.lambdas))
    cert = certify(s, args.r, tol)
    chain = cert.bound_chain
    payload = {
        "lambdas": list(s.values),
        "n": s.n,
        "r": cert.r,
        "L": cert.L,
        "L_direct": cert.L_direct,
        "L_factored": cert.L_factored,
        "b": list(cert.b),
        "c": list(cert.c),
        "d": list(cert.d),
        "B": cert.B,
        "sum_d_sq": cert.sum_d_sq,
        "prod_b": cert.transform.prod_b,
        "H": list(cert.interpolation.H),
        "identity_flags": cert.identity_flags,
        "bound_chain": {
            "branch": chain.branch,
            "p0": chain.p0,
            "checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds} for c in chain.checks
            ],
        },
    }
    return Report("certify", payload, ["p", "b_p", "c_p", "d_p"], _bcd_rows(cert)), EXIT_OK


def cmd_scan(args: argparse.Namespace, tol: Tolerances) -> tuple[Report, int]:
    if args.trials < 1:
        raise ParseError("--trials must be positive")
    if args.bound < 1:
        raise ParseError("--bound must be positive")
    lo, hi = _n_range(args.n)
    seed = _seed(args.seed)
    started = time.perf_counter()
    per_n, offending = [], []
    for n in range(lo, hi + 1):
        L_min = L_max = None
        certificates = violations = 0
        for trial in range(args.trials):
            s = random_spectrum(seed, n, trial, args.bound)
            for r in range(1, n + 1):
                try:
                    L = certify(s, r, tol).L
                except RigidityError as exc:
                    violations += 1
                    offending.append(
                        {"n": n, "trial": trial, "r": r, "lambdas": list(s.values),
                         "error": f"{type(exc).__name__}: {exc}"}
                    )
                    continue
                certificates += 1
                L_min = L if L_min is None or L < L_min else L_min
                L_max = L if L_max is None or L > L_max else L_max
        per_n.append([n, args.trials, certificates, violations, L_min, L_max])
    elapsed = time.perf_counter() - started
    # wall time goes to stderr so stdout stays byte-identical across runs
    print(f"scan: {elapsed:.2f}s wall time", file=sys.stderr)
    for bad in offending:
        lams = ",".join(str(v) for v in bad["lambdas"])
        print(f"scan: violation n={bad['n']} r={bad['r']} lambdas={lams}: {bad['error']}", file=sys.stderr)
    total = sum(row[3] for row in per_n)
    payload = {
        "seed": seed,
        "trials": args.trials,
        "n_range": [lo, hi],
        "rational_bound": args.bound,
        "certificates": sum(row[2] for row in per_n),
        "violations": total,
        "offending": offending,
    }
    columns = ["n", "spectra", "certificates", "violations", "L_min", "L_max"]
    return Report("scan", payload, columns, per_n), EXIT_FAILED if total else EXIT_OK


def cmd_derivatives(args: argparse.Namespace, tol: Tolerances) -> tuple[Report, int]:
    if args.float:
        s = Spectrum.floats(_floats(args.lambdas), tol)
        f_j = _floats(args.fj)
    else:
        s = Spectrum.exact(_rationals(args.lambdas))
        f_j = _rationals(args.fj)
    if len(f_j) != 1:
        raise ParseError("--fj takes a single value")
    generic = solve_derivatives_generic(s, f_j[0], tol)
    closed = derivatives_closed_form(s, f_j[0])
    discrepancy = max(abs(a - b) for a, b in zip(generic.lambda_derivs, closed.lambda_derivs))
    payload = {
        "kind": s.kind.value,
        "lambdas": list(s.values),
        "f_j": generic.f_j,
        "det": vandermonde_det(s),
        "generic": list(generic.lambda_derivs),
        "closed_form": list(closed.lambda_derivs),
        "max_discrepancy": discrepancy,
        "moments_hold": generic.moments_hold(tol) and closed.moments_hold(tol),
    }
    if not s.is_exact:
        payload["residual_generic"] = generic.residual
        payload["residual_closed_form"] = closed.residual
    rows = [
        [i, lam, a, b]
        for i, (lam, a, b) in enumerate(zip(s.values, generic.lambda_derivs, closed.lambda_derivs), start=1)
    ]
    report = Report("derivatives", payload, ["i", "lambda_i", "generic", "closed_form"], rows)
    if s.is_exact and (discrepancy != 0 or not payload["moments_hold"]):
        raise IdentityViolation(f"closed form and generic solve disagree by {discrepancy}")
    if not s.is_exact and (discrepancy > tol.residual or not payload["moments_hold"]):
        return report, EXIT_FAILED
    return report, EXIT_OK


def cmd_stokes(args: argparse.Namespace, tol: Tolerances) -> tuple[Report, int]:
    s = Spectrum.exact(_rationals(args.lambdas))
    if s.n < 3:
        raise DegenerateSpectrum(f"A needs n >= 3, got n = {s.n}")
    f = _rationals(args.f)
    if len(f) != s.n:
        raise ParseError(f"--f has {len(f)} components, --lambdas has {s.n}")
    g = GradientData.for_spectrum(s, f)
    via_L = A_via_L(s, g)
    via_triple = A_via_triple_sum(s, g)
    if via_L != via_triple:
        raise IdentityViolation(f"A via L = {via_L} but triple sum = {via_triple}")
    verdict = rigidity_verdict(s, g)
    payload = {
        "lambdas": list(s.values),
        "f": list(g.f),
        "A": verdict.A,
        "A_via_L": via_L,
        "A_via_triple_sum": via_triple,
        "is_rigid": verdict.is_rigid,
        "forced_f_zero": verdict.forced_f_zero,
    }
    rows = [[r, s.values[r - 1], g.f[r - 1], L_direct(s, r)] for r in range(1, s.n + 1)]
    return Report("stokes", payload, ["r", "lambda_r", "f_r", "L_r"], rows), EXIT_OK


def cmd_isoparametric(args: argparse.Namespace, tol: Tolerances) -> tuple[Report, int]:
    mults = _ints(args.multiplicities) if args.multiplicities else [1] * args.g
    fam = IsoparametricFamily(args.n, args.g, tuple(mults))
    columns = ["theta"] + [f"l{i}" for i in range(1, fam.n + 1)] + ["H", "S", "R"]
    base = {"n": fam.n, "g": fam.g, "multiplicities": list(fam.multiplicities)}
    if args.minimal:
        theta = find_minimal_theta(fam, tol)
        row = curvature_report(fam, theta, tol)
        payload = {**base, "theta_star": theta, "theta_star_over_pi": theta / math.pi,
                   "H": row.H, "S": row.S, "R": row.R}
        return Report("isoparametric", payload, columns, [[row.theta, *row.lambdas, row.H, row.S, row.R]]), EXIT_OK
    if args.samples < 1:
        raise ParseError("--samples must be positive")
    rep = verify_remark(fam, args.samples, tol)
    payload = {**base, "samples": args.samples, "max_abs_R": rep.max_abs_R,
               "tolerance": rep.tolerance, "simple": fam.is_simple, "passed": rep.passed}
    rows = [[r.theta, *r.lambdas, r.H, r.S, r.R] for r in rep.rows]
    # R vanishes identically only for simple principal curvatures
    code = EXIT_FAILED if fam.is_simple and not rep.passed else EXIT_OK
    return Report("isoparametric", payload, columns, rows), code


def cmd_clifford(args: argparse.Namespace, tol: Tolerances) -> tuple[Report, int]:
    prof = clifford_torus_spectrum(args.n, args.r)
    ps = power_sums(prof.expanded(), 2)
    payload = {
        "n": args.n,
        "r": args.r,
        "values": list(prof.values),
        "multiplicities": list(prof.multiplicities),
        "p1": ps.p(1),
        "p2": ps.p(2),
    }
    rows = [[v, m] for v, m in zip(prof.values, prof.multiplicities)]
    return Report("clifford", payload, ["value", "multiplicity"], rows), EXIT_OK


COMMANDS = {
    "certify": cmd_certify,
    "scan": cmd_scan,
    "derivatives": cmd_derivatives,
    "stokes": cmd_stokes,
    "isoparametric": cmd_isoparametric,
    "clifford": cmd_clifford,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    parser = _Parser(prog="rigiditykit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", parents=[common], help="certify L(r) < 0 for one spectrum")
    p.add_argument("--lambdas", required=True, help="comma-separated rationals, e.g. 0,1/2,3")
    p.add_argument("--r", type=int, required=True, help="distinguished index, 1-based")

    p = sub.add_parser("scan", parents=[common], help="certify random exact spectra in bulk")
    p.add_argument("--n", default="3..6", help="dimension or inclusive range A..B (default 3..6)")
    p.add_argument("--trials", type=int, default=100, help="spectra per n (default 100)")
    p.add_argument("--seed", default=None, help=f"64-bit seed (default ${SEED_ENV} or 0)")
    p.add_argument("--bound", type=int, default=50, help="max |numerator|, denominator (default 50)")

    p = sub.add_parser("derivatives", parents=[common], help="eigenvalue derivatives, both ways")
    p.add_argument("--lambdas", required=True)
    p.add_argument("--fj", required=True, help="driving component f_j")
    p.add_argument("--float", action="store_true", help="use float64 instead of exact rationals")

    p = sub.add_parser("stokes", parents=[common], help="Stokes quantity A and rigidity verdict")
    p.add_argument("--lambdas", required=True)
    p.add_argument("--f", required=True, help="gradient components f_1..f_n")

    p = sub.add_parser("isoparametric", parents=[common], help="curvature table for an isoparametric family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--multiplicities", help="comma-separated, default all 1")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--minimal", action="store_true", help="report only the minimal member")

    p = sub.add_parser("clifford", parents=[common], help="minimal Clifford torus spectrum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    return parser


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, DegenerateSpectrum):
        return EXIT_DEGENERATE
    if isinstance(exc, IdentityViolation):
        return EXIT_IDENTITY
    if isinstance(exc, (InequalityViolation, BoundViolation, PositivityViolation, ConvergenceFailure)):
        return EXIT_FAILED
    if isinstance(exc, (ParseError, InvalidRange, IndexOutOfRange, PoleProximity, ValueError)):
        return EXIT_INPUT
    return EXIT_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report, code = COMMANDS[args.command](args, DEFAULT_TOLERANCES)
    except (RigidityError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _exit_code(exc)
    text = render(report, args.output)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def run() -> None:
    sys.exit(main())
