"""Solver inputs and outputs."""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from spin_maxent.config import ScanOverrides
from spin_maxent.models.density import DensityMatrix
from spin_maxent.models.levels import ObservationLevel
from spin_maxent.models.pauli import BlochExpansion, PauliString, pauli


class Method(str, Enum):
    """Reconstruction path that produced a result."""

    CLOSED_FORM = "closed_form"
    DUAL = "dual"
    PRIMAL_SCAN = "primal_scan"
    ORACLE = "oracle"


class DualState(BaseModel):
    """Lagrange multipliers and partition function of a canonical density operator."""

    multipliers: List[float] = Field(..., description="lambda_nu aligned with the level")
    partition: float = Field(..., gt=0.0, description="Z = Tr exp(-sum lambda_nu G_nu)")
    log_partition: float = Field(..., description="ln Z")
    iterations: int = Field(default=0, ge=0, description="Newton iterations used")


class ReconstructionResult(BaseModel):
    """Outcome of any reconstruction path."""

    rho: DensityMatrix = Field(..., description="Reconstructed density matrix")
    entropy: float = Field(..., ge=0.0, description="von Neumann entropy (nats)")
    multipliers: Optional[List[float]] = Field(None, description="Lagrange multipliers if finite")
    predicted: BlochExpansion = Field(..., description="Full Bloch expansion of rho")
    method: Method = Field(..., description="Path that produced the result")
    residual: float = Field(..., ge=0.0, description="Max constraint violation")
    level: Optional[ObservationLevel] = Field(None, description="Level the means refer to")
    dual: Optional[DualState] = Field(None, description="Dual solver state (method=dual)")

    class Config:
        """Pydantic configuration."""

        arbitrary_types_allowed = True
        use_enum_values = True

    @property
    def n(self) -> int:
        return self.rho.n


class ScanSpec(BaseModel):
    """Box of unmeasured Bloch coefficients searched by the primal scan."""

    free_coefficients: Tuple[PauliString, ...] = Field(..., description="Scanned strings")
    bounds: Tuple[float, float] = Field(default=(-1.0, 1.0), description="Box per coefficient")
    coarse_resolution: int = Field(default=41, ge=3, description="Grid points per axis")
    refinement_rounds: int = Field(default=3, ge=0, description="Zoom rounds")
    shrink_factor: float = Field(default=0.2, gt=0.0, lt=1.0, description="Zoom per round")

    class Config:
        """Pydantic configuration."""

        frozen = True

    @field_validator("free_coefficients", mode="before")
    @classmethod
    def _coerce(cls, value):
        return tuple(pauli(item) for item in value)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ScanSpec":
        if not 1 <= len(self.free_coefficients) <= 4:
            raise ValueError(
                f"Scan dimension must be between 1 and 4, got {len(self.free_coefficients)}"
            )
        low, high = self.bounds
        if not -1.0 <= low < high <= 1.0:
            raise ValueError(f"Bounds {self.bounds} must lie inside [-1, 1]")
        return self

    @classmethod
    def from_overrides(cls, free_coefficients, overrides: ScanOverrides) -> "ScanSpec":
        return cls(
            free_coefficients=free_coefficients,
            coarse_resolution=overrides.coarse_resolution,
            refinement_rounds=overrides.refinement_rounds,
            shrink_factor=overrides.shrink_factor,
        )


class OGIntermediates(BaseModel):
    """Closed-form quantities of the five-observable ZZ/XX/XY/YX/YY level."""

    B: complex = Field(..., description="xx + yy - i(xy - yx)")
    D: complex = Field(..., description="xx - yy + i(xy + yx)")
    M: Tuple[float, float, float, float] = Field(..., description="Eigenvalues times four")
    a: Optional[float] = Field(None, description="lambda_zz (None on the boundary)")
    b: Optional[complex] = Field(None, description="lxx + lyy - i(lxy - lyx)")
    d: Optional[complex] = Field(None, description="lxx - lyy + i(lxy + lyx)")

    class Config:
        """Pydantic configuration."""

        arbitrary_types_allowed = True


class OHIntermediates(BaseModel):
    """Closed-form quantities of the XX/XY/YX/YY level."""

    N: Tuple[float, float, float, float] = Field(..., description="N_1..N_4")
    t: float = Field(..., description="Predicted <ZZ>")
