"""Density-matrix validation, entropy functionals and Hermitian matrix functions."""

import logging
from typing import Union

import numpy as np
from scipy.special import xlogy

from spin_maxent.core.pauli_algebra import spin_count
from spin_maxent.exceptions import NegativeEigenvalue, NotHermitian, TraceNotOne
from spin_maxent.models.density import DensityMatrix, EntropyReport

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10

MatrixLike = Union[np.ndarray, DensityMatrix]


def _as_array(m: MatrixLike) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.matrix
    return np.asarray(m, dtype=complex)


def _check_hermitian(m: np.ndarray, tol: float) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"Expected a square matrix, got shape {m.shape}")
    deviation = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if deviation > tol:
        raise NotHermitian(f"Matrix deviates from its adjoint by {deviation:.3e}")


def validate(
    m: MatrixLike,
    tol: float = POSITIVITY_TOL,
    herm_tol: float = HERMITIAN_TOL,
    trace_tol: float = TRACE_TOL,
) -> DensityMatrix:
    """Check that m is a density matrix and return it as a DensityMatrix.

    Eigenvalues in [-tol, 0) are clamped to zero and the matrix is renormalized to unit
    trace. Anything more negative is rejected.

    Args:
        m: Square complex matrix of dimension 2^n
        tol: Positivity tolerance
        herm_tol: Max elementwise deviation from the adjoint
        trace_tol: Max deviation of the trace from one

    Returns:
        Validated DensityMatrix

    Raises:
        NotHermitian, TraceNotOne, NegativeEigenvalue
    """
    matrix = _as_array(m)
    _check_hermitian(matrix, herm_tol)
    n = spin_count(matrix.shape[0])

    trace = np.trace(matrix)
    if abs(trace - 1.0) > trace_tol:
        raise TraceNotOne(f"Trace is {trace.real:.15g}{trace.imag:+.3g}j, expected 1")

    matrix = (matrix + matrix.conj().T) / 2
    values, vectors = np.linalg.eigh(matrix)
    smallest = float(values[0])
    if smallest < -tol:
        raise NegativeEigenvalue(smallest)
    if smallest < 0.0:
        values = np.clip(values, 0.0, None)
        values = values / values.sum()
        matrix = (vectors * values) @ vectors.conj().T
        logger.debug(f"Clamped eigenvalue {smallest:.3e} to zero")

    return DensityMatrix(matrix=matrix, n=n)


def is_physical(m: MatrixLike, tol: float = POSITIVITY_TOL) -> bool:
    """True when m passes validate with the given positivity tolerance."""
    try:
        validate(m, tol=tol)
    except (NotHermitian, TraceNotOne, NegativeEigenvalue):
        return False
    return True


def _eigenvalues(rho: MatrixLike) -> np.ndarray:
    values = np.linalg.eigvalsh(_as_array(rho))
    return np.clip(values, 0.0, None)


def entropy_from_eigenvalues(values) -> float:
    """-sum p ln p with 0 ln 0 = 0."""
    p = np.clip(np.asarray(values, dtype=float), 0.0, None)
    return max(float(-np.sum(xlogy(p, p))), 0.0)


def von_neumann_entropy(rho: MatrixLike) -> float:
    """S = -Tr(rho ln rho) in nats, computed from eigenvalues."""
    return entropy_from_eigenvalues(_eigenvalues(rho))


def linear_entropy(rho: MatrixLike) -> float:
    """1 - Tr(rho^2)."""
    matrix = _as_array(rho)
    purity = float(np.real(np.einsum("ij,ji->", matrix, matrix)))
    return 1.0 - purity


def entropy_report(rho: MatrixLike) -> EntropyReport:
    """Von Neumann and linear entropy with the ascending spectrum."""
    values = _eigenvalues(rho)
    return EntropyReport(
        von_neumann=entropy_from_eigenvalues(values),
        linear=linear_entropy(rho),
        eigenvalues=[float(v) for v in np.sort(values)],
    )


def exp_hermitian(h: MatrixLike, herm_tol: float = 1e-10) -> np.ndarray:
    """exp(h) for Hermitian h via U exp(diag(w)) U^dagger."""
    matrix = _as_array(h)
    _check_hermitian(matrix, herm_tol)
    values, vectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    return (vectors * np.exp(values)) @ vectors.conj().T


def sqrt_psd(m: MatrixLike) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix."""
    matrix = _as_array(m)
    values, vectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def fidelity(rho: MatrixLike, sigma: MatrixLike) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    root = sqrt_psd(rho)
    inner = root @ _as_array(sigma) @ root
    values = np.clip(np.linalg.eigvalsh((inner + inner.conj().T) / 2), 0.0, None)
    return float(min(np.sum(np.sqrt(values)) ** 2, 1.0))


def trace_distance(rho: MatrixLike, sigma: MatrixLike) -> float:
    """(1/2) ||rho - sigma||_1."""
    diff = _as_array(rho) - _as_array(sigma)
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2))))


def max_norm(a: MatrixLike, b: MatrixLike) -> float:
    """Largest elementwise modulus of a - b."""
    return float(np.max(np.abs(_as_array(a) - _as_array(b))))
