"""Error taxonomy for spin-maxent.

Input problems derive from ValueError, numerical failures from RuntimeError.
"""

from typing import Optional, Sequence


class SpinMaxEntError(Exception):
    """Base class for every error raised by spin-maxent."""


# Linear algebra / validation


class DimensionMismatch(SpinMaxEntError, ValueError):
    """Matrix and observable dimensions disagree."""


class NonRealExpectation(SpinMaxEntError, ValueError):
    """Tr(rho G) has an imaginary part above tolerance (non-Hermitian input)."""


class NotHermitian(SpinMaxEntError, ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class TraceNotOne(SpinMaxEntError, ValueError):
    """Matrix trace differs from one beyond tolerance."""


class NegativeEigenvalue(SpinMaxEntError, ValueError):
    """Matrix has an eigenvalue below the positivity tolerance."""

    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"Negative eigenvalue {min_eigenvalue:.3e}: matrix is not physical")


# States and levels


class InvalidFamilyParameter(SpinMaxEntError, ValueError):
    """Bell family/phase combination is not defined."""


class UnknownLevel(SpinMaxEntError, KeyError):
    """Observation level key is not registered."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "Unknown observation level"


class DuplicateObservable(SpinMaxEntError, ValueError):
    """Observable already present in the observation level."""


class NotMember(SpinMaxEntError, ValueError):
    """Observable to remove is not part of the observation level."""


# Parser


class ObservableSyntaxError(SpinMaxEntError, ValueError):
    """Observable expression does not match the grammar."""

    def __init__(self, message: str, position: int, source: str = ""):
        self.position = position
        self.source = source
        super().__init__(f"{message} at position {position}")


class SiteOutOfRange(SpinMaxEntError, ValueError):
    """Site index outside 1..n."""


class DuplicateSite(SpinMaxEntError, ValueError):
    """Site mentioned more than once in one observable."""


# Solvers


class BoundaryDetected(SpinMaxEntError, RuntimeError):
    """Dual multipliers exceeded the cap before convergence."""

    def __init__(self, multipliers: Optional[Sequence[float]] = None, cap: float = 0.0):
        self.multipliers = None if multipliers is None else list(multipliers)
        self.cap = cap
        super().__init__(f"Lagrange multipliers exceeded cap {cap:g}; maximizer is on the boundary")


class Infeasible(SpinMaxEntError, RuntimeError):
    """No physical density matrix reproduces the measured means."""


class MaxIterations(SpinMaxEntError, RuntimeError):
    """Iterative solver ran out of iterations."""


class NoPhysicalPoint(Infeasible):
    """Every candidate of a primal scan is non-physical."""


class BlochNormExceeded(Infeasible):
    """Single-spin Bloch vector longer than one."""


class NonPhysicalMeans(Infeasible):
    """Closed-form reconstruction would have a negative eigenvalue."""


class MultiplierDomainError(SpinMaxEntError, ValueError):
    """Lagrange multipliers are infinite (pure-state boundary)."""
