"""Pauli-string and Bloch-expansion data models."""

from enum import Enum
from typing import Dict, Iterator, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator


class Axis(str, Enum):
    """Single-site operator labels."""

    I = "I"  # noqa: E741
    X = "X"
    Y = "Y"
    Z = "Z"


AXES = "IXYZ"


class PauliString(BaseModel):
    """Tensor product of single-site operators, site 1 leftmost."""

    factors: str = Field(..., description="One of I, X, Y, Z per site, e.g. 'XZI'")

    class Config:
        """Pydantic configuration."""

        frozen = True

    @field_validator("factors", mode="before")
    @classmethod
    def _normalize(cls, value):
        if isinstance(value, (list, tuple)):
            value = "".join(a.value if isinstance(a, Axis) else str(a) for a in value)
        value = str(value).upper()
        if not value:
            raise ValueError("PauliString needs at least one site")
        bad = sorted(set(value) - set(AXES))
        if bad:
            raise ValueError(f"Invalid site operator(s): {', '.join(bad)}")
        return value

    @property
    def n(self) -> int:
        """Number of spins."""
        return len(self.factors)

    @property
    def is_identity(self) -> bool:
        return set(self.factors) == {"I"}

    @property
    def label(self) -> str:
        return self.factors

    def __str__(self) -> str:
        return self.factors

    def __lt__(self, other: "PauliString") -> bool:
        return self.factors < other.factors


def pauli(label: Union[str, PauliString]) -> PauliString:
    """Build a PauliString from a label such as 'ZZ'."""
    if isinstance(label, PauliString):
        return label
    return PauliString(factors=label)


class BlochExpansion(BaseModel):
    """Real coefficients of a density matrix in the Pauli-string basis.

    Coefficients are keyed by label; the identity coefficient is fixed at 1 and the
    expansion holds all 4^n strings.
    """

    n: int = Field(..., ge=1, description="Number of spins")
    coefficients: Dict[str, float] = Field(..., description="Label -> expectation value")

    @model_validator(mode="after")
    def _check_complete(self) -> "BlochExpansion":
        if len(self.coefficients) != 4**self.n:
            raise ValueError(
                f"Expansion over {self.n} spins needs {4 ** self.n} entries, "
                f"got {len(self.coefficients)}"
            )
        identity = "I" * self.n
        if abs(self.coefficients.get(identity, 0.0) - 1.0) > 1e-12:
            raise ValueError("Identity coefficient must equal 1")
        return self

    def __getitem__(self, key: Union[str, PauliString]) -> float:
        return self.coefficients[pauli(key).label]

    def items(self) -> Iterator[Tuple[str, float]]:
        return iter(self.coefficients.items())

    def nonzero(self, tol: float = 1e-9, include_identity: bool = False) -> Dict[str, float]:
        """Coefficients with |value| > tol."""
        identity = "I" * self.n
        return {
            label: value
            for label, value in self.coefficients.items()
            if abs(value) > tol and (include_identity or label != identity)
        }


class ObservableExpr(BaseModel):
    """Source text of an observable together with the parsed string."""

    source: str = Field(..., description="Expression as written, e.g. 'sz(1)*sz(2)'")
    parsed: PauliString = Field(..., description="Parsed Pauli string")

    class Config:
        """Pydantic configuration."""

        frozen = True
