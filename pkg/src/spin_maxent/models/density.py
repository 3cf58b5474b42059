"""Density-matrix data models."""

from typing import List

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


class DensityMatrix(BaseModel):
    """Validated 2^n x 2^n density matrix (Hermitian, unit trace, PSD)."""

    matrix: np.ndarray = Field(..., description="Complex matrix")
    n: int = Field(..., ge=1, description="Number of spins")

    class Config:
        """Pydantic configuration."""

        arbitrary_types_allowed = True
        frozen = True

    @field_validator("matrix", mode="before")
    @classmethod
    def _freeze_matrix(cls, value):
        matrix = np.array(value, dtype=complex)
        if matrix.ndim != 2:
            raise ValueError("Density matrix must be two-dimensional")
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_shape(self) -> "DensityMatrix":
        dim = 2**self.n
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"Expected {dim}x{dim} matrix for {self.n} spins, got {self.matrix.shape}"
            )
        return self

    @property
    def dim(self) -> int:
        return 2**self.n

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues."""
        return np.linalg.eigvalsh(self.matrix)


class EntropyReport(BaseModel):
    """Entropy diagnostics of a density matrix (natural log)."""

    von_neumann: float = Field(..., ge=0.0, description="-Tr(rho ln rho) in nats")
    linear: float = Field(..., description="1 - Tr(rho^2)")
    eigenvalues: List[float] = Field(..., description="Sorted eigenvalues (ascending)")
