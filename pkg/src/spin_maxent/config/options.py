"""Solver options shared by the library and the JSON request format."""

from pydantic import BaseModel, Field


class ScanOverrides(BaseModel):
    """Resolution policy for the primal bounded scan."""

    coarse_resolution: int = Field(default=41, ge=3, description="Grid points per free axis")
    refinement_rounds: int = Field(default=3, ge=0, description="Zoom rounds around the argmax")
    shrink_factor: float = Field(
        default=0.2, gt=0.0, lt=1.0, description="Box half-width multiplier per round"
    )

    class Config:
        """Pydantic configuration."""

        extra = "forbid"


class SolverOptions(BaseModel):
    """Tolerances and caps for every reconstruction path."""

    residual_tol: float = Field(default=1e-9, gt=0.0, description="Max constraint violation")
    max_iter: int = Field(default=200, ge=1, description="Newton iteration limit")
    multiplier_cap: float = Field(
        default=40.0, gt=0.0, description="Max |lambda| before the dual reports a boundary"
    )
    hessian_ridge: float = Field(default=1e-12, ge=0.0, description="Ridge added to the Hessian")
    positivity_tol: float = Field(
        default=1e-10, ge=0.0, description="Eigenvalues above -tol count as non-negative"
    )
    disable_closed_forms: bool = Field(
        default=False, description="Skip analytic fast paths (forces the generic solver)"
    )
    scan: ScanOverrides = Field(default_factory=ScanOverrides, description="Primal scan policy")
    oracle_starts: int = Field(default=4, ge=1, description="Random restarts of the oracle")
    seed: int = Field(default=0, description="Seed for the oracle's random starts")

    class Config:
        """Pydantic configuration."""

        extra = "forbid"
