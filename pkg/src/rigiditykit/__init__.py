"""Exact certification of the L(r) < 0 inequality, the Vandermonde derivative
formulas and the Stokes quantity behind a spectral rigidity theorem for
hypersurfaces, plus numerical checks on isoparametric families."""

__version__ = "0.1.0"

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import *  # noqa: F401,F403
from .hypersurface import (
    CurvatureReport,
    IsoparametricFamily,
    clifford_torus_spectrum,
    curvature_report,
    find_minimal_theta,
    gauss_scalar_curvature,
    principal_curvatures,
    verify_remark,
)
from .inequality import (
    InequalityCertificate,
    L_direct,
    L_factored,
    certify,
    check_interpolation_identity,
    transform_bcd,
    verify_exponential_bound_chain,
)
from .spectral import (
    Kind,
    MultiplicityProfile,
    PowerSums,
    Spectrum,
    newton_power_to_elementary,
    power_sums,
    solve_multiplicities,
)
from .stokes import A_via_L, A_via_triple_sum, GradientData, rigidity_verdict
from .vandermonde import (
    DerivativeSolution,
    derivatives_closed_form,
    solve_derivatives_generic,
    vandermonde_det,
    vandermonde_matrix,
)
