"""Reference pure and mixed states.

Basis ordering is the most error-prone convention here: |1> = (1, 0) and |0> = (0, 1), so
sigma_z |1> = +|1>, and for several spins the leftmost ket is site 1. In the 2-spin
standard basis the index order is |11>, |10>, |01>, |00>.
"""

from enum import Enum
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from spin_maxent.exceptions import InvalidFamilyParameter
from spin_maxent.models.density import DensityMatrix
from spin_maxent.models.states import SpinPureState

_PHASE_TOL = 1e-12


class BellFamily(str, Enum):
    """Bell-state families."""

    PSI = "psi"  # (|11> + e^{i phi}|00>)/sqrt(2), continuous phi
    PHI_PM = "phi_pm"  # (|01> +/- |10>)/sqrt(2), phi in {0, pi}


def basis_ket(bits: str) -> np.ndarray:
    """Computational ket for a string of '1'/'0' spin values, site 1 first."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"Invalid basis label: {bits!r}")
    index = int("".join("0" if b == "1" else "1" for b in bits), 2)
    ket = np.zeros(2 ** len(bits), dtype=complex)
    ket[index] = 1.0
    return ket


def single_spin(theta: float, phi: float) -> SpinPureState:
    """cos(theta)|1> + e^{i phi} sin(theta)|0>.

    Bloch vector is (sin 2theta cos phi, sin 2theta sin phi, cos 2theta).
    """
    amplitudes = np.array([np.cos(theta), np.exp(1j * phi) * np.sin(theta)], dtype=complex)
    return SpinPureState(n=1, amplitudes=amplitudes)


def _wrap(phi: float) -> float:
    return float(np.angle(np.exp(1j * phi)))


def bell(phi: float, family: BellFamily = BellFamily.PSI) -> SpinPureState:
    """Two-spin maximally entangled state with relative phase phi.

    Raises:
        InvalidFamilyParameter: phi_pm family with phi other than 0 or pi
    """
    family = BellFamily(family)
    phase = np.exp(1j * phi)
    if family is BellFamily.PSI:
        amplitudes = (basis_ket("11") + phase * basis_ket("00")) / np.sqrt(2)
    else:
        wrapped = abs(_wrap(phi))
        if wrapped > _PHASE_TOL and abs(wrapped - np.pi) > _PHASE_TOL:
            raise InvalidFamilyParameter(f"Family phi_pm takes phi in {{0, pi}}, got {phi}")
        sign = 1.0 if wrapped <= _PHASE_TOL else -1.0
        amplitudes = (basis_ket("01") + sign * basis_ket("10")) / np.sqrt(2)
    return SpinPureState(n=2, amplitudes=amplitudes)


def ghz(phi: float) -> SpinPureState:
    """(|111> + e^{i phi}|000>)/sqrt(2)."""
    amplitudes = (basis_ket("111") + np.exp(1j * phi) * basis_ket("000")) / np.sqrt(2)
    return SpinPureState(n=3, amplitudes=amplitudes)


def phase_averaged_ghz() -> DensityMatrix:
    """(|111><111| + |000><000|)/2."""
    matrix = np.zeros((8, 8), dtype=complex)
    matrix[0, 0] = matrix[7, 7] = 0.5
    return DensityMatrix(matrix=matrix, n=3)


def ghz_phase_average(intervals: int = 64) -> np.ndarray:
    """Trapezoid quadrature of rho_GHZ(phi) over [-pi, pi], normalized by 2 pi."""
    phis = np.linspace(-np.pi, np.pi, intervals + 1)
    stack = np.stack([ghz(phi).projector() for phi in phis])
    return trapezoid(stack, phis, axis=0) / (2 * np.pi)


def maximally_mixed(n: int) -> DensityMatrix:
    dim = 2**n
    return DensityMatrix(matrix=np.eye(dim, dtype=complex) / dim, n=n)


def random_pure_state(n: int, rng: np.random.Generator) -> SpinPureState:
    """Haar-random pure state."""
    vector = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return SpinPureState(n=n, amplitudes=vector / np.linalg.norm(vector))


def random_mixed_state(
    n: int, rng: np.random.Generator, rank: Optional[int] = None
) -> DensityMatrix:
    """A A^dagger / Tr for complex-Gaussian A of shape (2^n, rank); full rank by default."""
    dim = 2**n
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ValueError(f"Rank must be between 1 and {dim}, got {rank}")
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    matrix = a @ a.conj().T
    matrix = matrix / np.trace(matrix).real
    return DensityMatrix(matrix=(matrix + matrix.conj().T) / 2, n=n)


class ReferenceState(str, Enum):
    """Reference families accepted by the CLI."""

    BELL = "bell"
    GHZ = "ghz"
    SINGLE = "single"


def reference_state(
    kind: ReferenceState,
    phi: float = 0.0,
    theta: float = 0.0,
    family: BellFamily = BellFamily.PSI,
) -> SpinPureState:
    """Bell(phi, family), GHZ(phi) or single_spin(theta, phi)."""
    kind = ReferenceState(kind)
    if kind is ReferenceState.BELL:
        return bell(phi, family)
    if kind is ReferenceState.GHZ:
        return ghz(phi)
    return single_spin(theta, phi)
