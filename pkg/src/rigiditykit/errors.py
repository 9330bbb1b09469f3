"""Exception types raised across rigiditykit.

Errors that signal bad input derive from ``ValueError`` as well, so callers
that only care about "the input was wrong" can catch the builtin.  Errors that
signal a failed identity or inequality are never expected on valid input; if
one escapes, either floating point gave out or there is a bug.
"""

from __future__ import annotations


class RigidityError(Exception):
    """Base class for every error raised by this package."""


class DegenerateSpectrum(RigidityError, ValueError):
    """Spectrum too short, or two eigenvalues coincide."""


class IndexOutOfRange(RigidityError, IndexError):
    """Distinguished index ``r`` outside ``1..n``."""


class SingularSystem(RigidityError, ValueError):
    """A linear system that should be invertible is not."""


class NonIntegralSolution(RigidityError, ValueError):
    """Multiplicity system has no positive integer solution."""


class InvalidRange(RigidityError, ValueError):
    """A parameter lies outside its admissible range."""


class PoleProximity(RigidityError, ValueError):
    """Tube angle too close to a pole of the cotangent."""


class ConvergenceFailure(RigidityError, RuntimeError):
    """Root finding hit its iteration cap."""


class IdentityViolation(RigidityError):
    """An algebraic identity failed to hold."""


class InequalityViolation(RigidityError):
    """``L(r) < 0`` failed."""


class BoundViolation(RigidityError):
    """A step of the exponential bound chain failed."""


class PositivityViolation(RigidityError):
    """The Stokes quantity came out positive."""


class IllConditioned(UserWarning):
    """Float solve residual exceeded tolerance."""


class ParseError(RigidityError, ValueError):
    """Malformed command-line input."""
