"""Pure-state data model."""

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from spin_maxent.models.density import DensityMatrix


class SpinPureState(BaseModel):
    """Unit-norm state vector of n spins-1/2 (basis |1> = (1, 0), |0> = (0, 1))."""

    n: int = Field(..., ge=1, description="Number of spins")
    amplitudes: np.ndarray = Field(..., description="2^n complex amplitudes")

    class Config:
        """Pydantic configuration."""

        arbitrary_types_allowed = True
        frozen = True

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _freeze_amplitudes(cls, value):
        amplitudes = np.array(value, dtype=complex).reshape(-1)
        amplitudes.setflags(write=False)
        return amplitudes

    @model_validator(mode="after")
    def _check_norm(self) -> "SpinPureState":
        if self.amplitudes.shape != (2**self.n,):
            raise ValueError(f"Expected {2 ** self.n} amplitudes, got {self.amplitudes.shape[0]}")
        norm = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"State is not normalized (norm^2 = {norm:.15g})")
        return self

    def projector(self) -> np.ndarray:
        """|psi><psi| as a dense matrix."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density_matrix(self) -> DensityMatrix:
        return DensityMatrix(matrix=self.projector(), n=self.n)
