"""JSON request/report formats used by the CLI."""

from typing import List, Optional

from pydantic import BaseModel, Field

from spin_maxent.config import SolverOptions


class ObservableMean(BaseModel):
    """One measured observable in expression syntax, e.g. 'sz(1)*sz(2)'."""

    expr: str = Field(..., min_length=1, description="Observable expression")
    mean: float = Field(..., ge=-1.0, le=1.0, description="Measured mean value")

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


class ReconstructionRequest(BaseModel):
    """Input of `spin-maxent reconstruct`."""

    n_spins: int = Field(..., ge=1, le=3, description="Number of spins-1/2")
    level: Optional[str] = Field(None, description="Informational level key")
    observables: List[ObservableMean] = Field(default_factory=list, description="Measured means")
    options: SolverOptions = Field(default_factory=SolverOptions, description="Solver options")

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


class ComplexEntry(BaseModel):
    """Serialized complex number."""

    re: float
    im: float


class PredictedMean(BaseModel):
    """Bloch coefficient of the reconstructed state."""

    expr: str = Field(..., description="Observable expression")
    value: float = Field(..., description="Tr(rho G)")
    measured: bool = Field(..., description="Whether the observable was part of the level")


class ReconstructionReport(BaseModel):
    """Output of `spin-maxent reconstruct`."""

    units: str = Field(default="nats", description="Entropy units")
    n_spins: int = Field(..., description="Number of spins-1/2")
    method: str = Field(..., description="closed_form, dual, primal_scan or oracle")
    entropy: float = Field(..., description="von Neumann entropy")
    linear_entropy: float = Field(..., description="1 - Tr(rho^2)")
    eigenvalues: List[float] = Field(..., description="Ascending eigenvalues of rho")
    residual: float = Field(..., description="Max constraint violation")
    multipliers: Optional[List[float]] = Field(None, description="Lagrange multipliers")
    predicted: List[PredictedMean] = Field(
        default_factory=list, description="Nonzero Bloch coefficients"
    )
    rho: List[List[ComplexEntry]] = Field(..., description="Density matrix, row-major")


class VerificationCheck(BaseModel):
    """One PASS/FAIL line of a verification suite."""

    suite: str = Field(..., description="Suite name")
    name: str = Field(..., description="Check name")
    passed: bool = Field(..., description="Whether the check passed")
    observed: float = Field(..., description="Observed value")
    expected: float = Field(..., description="Expected value or bound")
    tolerance: float = Field(..., description="Allowed deviation")
