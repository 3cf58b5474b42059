"""Data models for spin-maxent."""

from spin_maxent.models.density import DensityMatrix, EntropyReport
from spin_maxent.models.levels import ConstraintSet, ObservationLevel
from spin_maxent.models.pauli import Axis, BlochExpansion, ObservableExpr, PauliString, pauli
from spin_maxent.models.reports import (
    ObservableMean,
    ReconstructionReport,
    ReconstructionRequest,
    VerificationCheck,
)
from spin_maxent.models.results import (
    DualState,
    Method,
    OGIntermediates,
    OHIntermediates,
    ReconstructionResult,
    ScanSpec,
)
from spin_maxent.models.states import SpinPureState

__all__ = [
    "Axis",
    "BlochExpansion",
    "ConstraintSet",
    "DensityMatrix",
    "DualState",
    "EntropyReport",
    "Method",
    "OGIntermediates",
    "OHIntermediates",
    "ObservableExpr",
    "ObservableMean",
    "ObservationLevel",
    "PauliString",
    "ReconstructionReport",
    "ReconstructionRequest",
    "ReconstructionResult",
    "ScanSpec",
    "SpinPureState",
    "VerificationCheck",
    "pauli",
]
