"""Observation levels and measured constraint sets."""

from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from spin_maxent.models.pauli import PauliString, pauli


class ObservationLevel(BaseModel):
    """Ordered set of measured (non-identity) Pauli strings."""

    name: Optional[str] = Field(None, description="Registry key or user label")
    n: int = Field(..., ge=1, description="Number of spins")
    observables: Tuple[PauliString, ...] = Field(default=(), description="Measured observables")
    inferred: bool = Field(
        default=False, description="Composition inferred from running text rather than a table"
    )

    class Config:
        """Pydantic configuration."""

        frozen = True

    @field_validator("observables", mode="before")
    @classmethod
    def _coerce(cls, value):
        return tuple(pauli(item) for item in value)

    @model_validator(mode="after")
    def _check_observables(self) -> "ObservationLevel":
        seen = set()
        for obs in self.observables:
            if obs.n != self.n:
                raise ValueError(f"Observable {obs} acts on {obs.n} spins, level has {self.n}")
            if obs.is_identity:
                raise ValueError("The identity is not an observable of a level")
            if obs in seen:
                raise ValueError(f"Duplicate observable {obs}")
            seen.add(obs)
        return self

    @property
    def labels(self) -> List[str]:
        return [obs.label for obs in self.observables]

    def observable_set(self) -> FrozenSet[PauliString]:
        return frozenset(self.observables)

    def __len__(self) -> int:
        return len(self.observables)

    def __contains__(self, item) -> bool:
        return pauli(item) in self.observable_set()


class ConstraintSet(BaseModel):
    """Measured means aligned with the observables of a level."""

    level: ObservationLevel = Field(..., description="Observation level")
    means: Tuple[float, ...] = Field(default=(), description="Tr(rho G_nu) per observable")

    class Config:
        """Pydantic configuration."""

        frozen = True

    @model_validator(mode="after")
    def _check_means(self) -> "ConstraintSet":
        if len(self.means) != len(self.level.observables):
            raise ValueError(
                f"{len(self.level.observables)} observables but {len(self.means)} means"
            )
        for obs, mean in zip(self.level.observables, self.means):
            if abs(mean) > 1.0 + 1e-12:
                raise ValueError(f"Mean of {obs} is {mean}, outside [-1, 1]")
        return self

    @property
    def n(self) -> int:
        return self.level.n

    def as_dict(self) -> Dict[str, float]:
        """Label -> mean."""
        return {obs.label: mean for obs, mean in zip(self.level.observables, self.means)}
