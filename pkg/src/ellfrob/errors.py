"""Exception hierarchy for the toolkit.

Every failure mode that callers are expected to handle programmatically gets
its own class; all of them derive from :class:`ToolkitError` so ``except
ToolkitError`` catches anything raised deliberately by this package.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class NonConvergence(ToolkitError):
    """A truncated series hit its term budget before meeting its tolerance."""


class UnsupportedOrder(ToolkitError):
    """A derivative order outside the implemented range was requested."""


class PoleTooClose(ToolkitError):
    """An evaluation point sits too close to a pole of the function."""


class ContourTooLarge(ToolkitError):
    """A residue contour would enclose more than the intended singularity."""


class DegenerateJacobian(ToolkitError):
    """A Jacobian matrix needed for a frame change is numerically singular."""


class NewtonDiverged(ToolkitError):
    """Newton iteration failed to converge from every configured start."""


class DegenerateInput(ToolkitError):
    """Input data violates a nondegeneracy precondition (coincident values,
    modulus below the validity strip, zero scale parameter, ...)."""


class NotInvertible(ToolkitError):
    """An integer matrix that must be unimodular is not invertible over Z."""


class NotExceptional(ToolkitError):
    """A triple of K-classes fails the class-exceptionality test."""


class NotARoot(ToolkitError):
    """A lattice vector is not a real root of the root system."""


class UnknownRelation(ToolkitError):
    """An unrecognized group-relation identifier."""


class UnknownIdentity(ToolkitError):
    """An unrecognized identity name was passed to the residual registry."""


class QuadratureUnconverged(ToolkitError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class IllConditioned(ToolkitError):
    """A least-squares design matrix is too ill-conditioned to trust."""
