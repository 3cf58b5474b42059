"""Brute-force primal maximization of the entropy over all unmeasured coefficients.

Independent of the dual code path: the state is parametrized as rho = A A^dagger / Tr(A A^dagger)
with A a free complex matrix, so every candidate is physical, and the measured means are
enforced by an augmented Lagrangian. Several random starts are tried and the feasible
candidate with the largest entropy wins. Candidates are projected onto the means before
they are compared.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.special import xlogy

from spin_maxent.config import SolverOptions
from spin_maxent.core.pauli_algebra import level_matrices
from spin_maxent.core.results import build_result
from spin_maxent.exceptions import Infeasible, MaxIterations
from spin_maxent.models.levels import ConstraintSet
from spin_maxent.models.results import Method, ReconstructionResult

logger = logging.getLogger(__name__)

SCALE_WEIGHT = 1e-3
LOG_FLOOR = 1e-300
FEASIBLE_TOL = 1e-6
MAX_OUTER = 60
INITIAL_PENALTY = 10.0
MAX_PENALTY = 1e10
INNER_OPTIONS = {"maxiter": 5000, "maxcor": 30, "ftol": 1e-15, "gtol": 1e-12}


def _unpack(x: np.ndarray, dim: int) -> np.ndarray:
    half = dim * dim
    return x[:half].reshape(dim, dim) + 1j * x[half:].reshape(dim, dim)


def _pack(a: np.ndarray) -> np.ndarray:
    return np.concatenate([a.real.ravel(), a.imag.ravel()])


def _state(a: np.ndarray) -> Tuple[np.ndarray, float]:
    gram = a @ a.conj().T
    scale = float(np.real(np.trace(gram)))
    rho = gram / scale
    return (rho + rho.conj().T) / 2, scale


def _residuals(rho: np.ndarray, stack: np.ndarray, target: np.ndarray) -> np.ndarray:
    return np.real(np.einsum("kij,ji->k", stack, rho)) - target


def _project(rho: np.ndarray, stack: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Shift rho along the measured strings so it hits the means exactly.

    Pauli strings are trace-orthogonal with Tr(G_j G_k) = d delta_jk, so the shift keeps
    the trace and Hermiticity and leaves every unmeasured coefficient alone.
    """
    r = _residuals(rho, stack, target)
    return rho - np.tensordot(r, stack, axes=1) / rho.shape[0]


def _lagrangian(x, dim, stack, target, y, mu):
    a = _unpack(x, dim)
    rho, scale = _state(a)
    values, vectors = np.linalg.eigh(rho)
    p = np.clip(values, 0.0, None)
    neg_entropy = float(np.sum(xlogy(p, p)))
    log_rho = (vectors * np.log(np.maximum(values, LOG_FLOOR))) @ vectors.conj().T

    r = _residuals(rho, stack, target)
    value = neg_entropy + y @ r + 0.5 * mu * (r @ r) + SCALE_WEIGHT * (scale - 1.0) ** 2

    gamma = log_rho + np.tensordot(y + mu * r, stack, axes=1)
    gamma = gamma - np.real(np.trace(gamma @ rho)) * np.eye(dim)
    ga = gamma @ a * (2.0 / scale) + 4.0 * SCALE_WEIGHT * (scale - 1.0) * a
    return value, _pack(ga)


def _augmented_lagrangian(
    a0: np.ndarray, stack: np.ndarray, target: np.ndarray, tol: float
) -> Tuple[np.ndarray, float]:
    dim = a0.shape[0]
    x = _pack(a0)
    y = np.zeros(len(target))
    mu = INITIAL_PENALTY
    previous = np.inf
    residual = np.inf
    for outer in range(MAX_OUTER):
        result = minimize(
            _lagrangian,
            x,
            args=(dim, stack, target, y, mu),
            jac=True,
            method="L-BFGS-B",
            options=INNER_OPTIONS,
        )
        a = _unpack(result.x, dim)
        rho, scale = _state(a)
        x = _pack(a / np.sqrt(scale))
        r = _residuals(rho, stack, target)
        residual = float(np.max(np.abs(r))) if len(r) else 0.0
        logger.debug(f"oracle outer {outer}: residual={residual:.3e} penalty={mu:.1e}")
        if residual <= tol:
            break
        stalled = residual > 0.25 * previous
        if stalled and mu >= MAX_PENALTY:
            logger.debug("oracle penalty saturated without progress")
            break
        y = y + mu * r
        if stalled:
            mu = min(mu * 10.0, MAX_PENALTY)
        previous = residual
    return rho, residual


def oracle_maxent(
    c: ConstraintSet, starts: Optional[int] = None, options: Optional[SolverOptions] = None
) -> ReconstructionResult:
    """Maximize S over all physical states matching the means, from random starts.

    Args:
        c: Measured constraints
        starts: Number of random starts (defaults to options.oracle_starts)
        options: Solver options; seed fixes the starts

    Raises:
        Infeasible: no start came near the measured means
        MaxIterations: starts came near the means but none within options.residual_tol
    """
    options = options or SolverOptions()
    starts = starts or options.oracle_starts
    rng = np.random.default_rng(options.seed)
    dim = 2**c.n
    stack = level_matrices(c.level.observables) if len(c.level) else np.zeros((0, dim, dim))
    target = np.asarray(c.means, dtype=float)

    best_rho, best_entropy, best_residual = None, -np.inf, np.inf
    for start in range(starts):
        a0 = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2 * dim)
        rho, residual = _augmented_lagrangian(a0, stack, target, options.residual_tol)
        if residual > FEASIBLE_TOL:
            best_residual = min(best_residual, residual)
            logger.debug(f"oracle start {start} infeasible (residual {residual:.3e})")
            continue
        projected = _project(rho, stack, target)
        r = _residuals(projected, stack, target)
        if np.linalg.eigvalsh(projected)[0] >= -options.positivity_tol and (
            not len(r) or np.max(np.abs(r)) <= options.residual_tol
        ):
            rho, residual = projected, float(np.max(np.abs(r))) if len(r) else 0.0
        best_residual = min(best_residual, residual)
        if residual > options.residual_tol:
            logger.debug(f"oracle start {start} stalled at residual {residual:.3e}")
            continue
        p = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
        entropy = float(-np.sum(xlogy(p, p)))
        if entropy > best_entropy:
            best_rho, best_entropy = rho, entropy

    if best_rho is None:
        if best_residual <= FEASIBLE_TOL:
            raise MaxIterations(
                f"Oracle reached residual {best_residual:.3e} but not "
                f"{options.residual_tol:g}"
            )
        raise Infeasible(
            f"No physical state reproduces the means (best residual {best_residual:.3e})"
        )
    logger.info(f"Oracle maximum S={best_entropy:.12g} over {starts} starts")
    return build_result(best_rho, c, Method.ORACLE, None, None, None, options)
