"""Generic maximum-entropy engine.

The canonical form is rho(l) = exp(-sum_nu l_nu G_nu) / Z. solve_dual minimizes the convex
dual ln Z(l) + l.G by damped Newton; its gradient is G - <G>_l and its Hessian is the
Kubo-Mori covariance of the observables. Pure or rank-deficient targets sit at infinite
multipliers; the iteration then stops once the ridge-limited step stagnates, well below
the multiplier cap. Exceeding the cap means the targets are unreachable in canonical form
and reconstruct falls back to a bounded primal scan or the primal oracle.
"""

import itertools
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp, softmax, xlogy

from spin_maxent.config import SolverOptions
from spin_maxent.core.closed_forms import try_closed_form
from spin_maxent.core.oracle import oracle_maxent
from spin_maxent.core.pauli_algebra import bloch_compose, level_matrices, multiply, string_matrix
from spin_maxent.core.results import build_result, predicted_means
from spin_maxent.exceptions import (
    BoundaryDetected,
    DuplicateObservable,
    MaxIterations,
    NoPhysicalPoint,
)
from spin_maxent.models.levels import ConstraintSet, ObservationLevel
from spin_maxent.models.pauli import PauliString
from spin_maxent.models.results import DualState, Method, ReconstructionResult, ScanSpec

logger = logging.getLogger(__name__)

ARMIJO = 1e-4
MIN_STEP = 1e-12
STAGNATION_RATIO = 0.5
DEGENERATE_GAP = 1e-6
TIE_TOL = 1e-12
SCAN_CHUNK = 4096

__all__ = [
    "dual_hessian",
    "free_coefficient_closure",
    "log_partition",
    "predicted_means",
    "reconstruct",
    "solve_dual",
    "solve_primal_scan",
]


class _Spectrum(NamedTuple):
    values: np.ndarray  # eigenvalues w of H = sum l G
    vectors: np.ndarray
    probs: np.ndarray  # softmax(-w)
    log_partition: float
    means: np.ndarray  # <G_nu>
    rotated: np.ndarray  # U^dagger G_nu U


def _spectrum(stack: np.ndarray, multipliers: np.ndarray) -> _Spectrum:
    h = np.tensordot(multipliers, stack, axes=1)
    values, vectors = np.linalg.eigh(h)
    probs = softmax(-values)
    rotated = vectors.conj().T @ stack @ vectors
    means = np.real(np.einsum("kii,i->k", rotated, probs))
    return _Spectrum(values, vectors, probs, float(logsumexp(-values)), means, rotated)


def _density(spec: _Spectrum) -> np.ndarray:
    return (spec.vectors * spec.probs) @ spec.vectors.conj().T


def _kubo_mori(spec: _Spectrum) -> np.ndarray:
    w, p = spec.values, spec.probs
    gap = w[None, :] - w[:, None]
    close = np.abs(gap) < DEGENERATE_GAP
    weights = np.where(
        close,
        (p[:, None] + p[None, :]) / 2,
        (p[:, None] - p[None, :]) / np.where(close, 1.0, gap),
    )
    g = spec.rotated
    hess = np.real(np.einsum("ij,aij,bij->ab", weights, g, g.conj()))
    return hess - np.outer(spec.means, spec.means)


def _stack(level: ObservationLevel) -> np.ndarray:
    return level_matrices(level.observables)


def log_partition(
    level: ObservationLevel, multipliers: Sequence[float]
) -> Tuple[float, np.ndarray, np.ndarray]:
    """(ln Z, rho, <G>) of the canonical form for the given multipliers."""
    multipliers = np.asarray(multipliers, dtype=float)
    if len(multipliers) != len(level):
        raise ValueError(f"{len(level)} observables but {len(multipliers)} multipliers")
    if not len(level):
        dim = 2**level.n
        return float(np.log(dim)), np.eye(dim, dtype=complex) / dim, np.zeros(0)
    spec = _spectrum(_stack(level), multipliers)
    return spec.log_partition, _density(spec), spec.means


def dual_hessian(level: ObservationLevel, multipliers: Sequence[float]) -> np.ndarray:
    """Exact Hessian of ln Z with respect to the multipliers (Kubo-Mori covariance)."""
    multipliers = np.asarray(multipliers, dtype=float)
    return _kubo_mori(_spectrum(_stack(level), multipliers))


def solve_dual(c: ConstraintSet, options: Optional[SolverOptions] = None) -> ReconstructionResult:
    """Fit the multipliers of the canonical form to the measured means.

    Raises:
        BoundaryDetected: |l| exceeded options.multiplier_cap
        MaxIterations: no convergence within options.max_iter
    """
    options = options or SolverOptions()
    level = c.level
    dim = 2**level.n
    if not len(level):
        logger.debug("Empty level: maximally mixed state")
        state = DualState(multipliers=[], partition=dim, log_partition=float(np.log(dim)))
        return build_result(
            np.eye(dim, dtype=complex) / dim, c, Method.DUAL, None, [], state, options
        )

    stack = _stack(level)
    target = np.asarray(c.means, dtype=float)
    ridge = options.hessian_ridge * np.eye(len(level))
    lam = np.zeros(len(level))
    spec = _spectrum(stack, lam)
    value = spec.log_partition + lam @ target
    previous = np.inf

    for iteration in range(1, options.max_iter + 1):
        grad = target - spec.means
        residual = float(np.max(np.abs(grad)))
        hess = _kubo_mori(spec) + ridge
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            step = -np.linalg.lstsq(hess, grad, rcond=None)[0]
        slope = float(grad @ step)
        decrement = -slope
        logger.debug(
            f"dual iter {iteration}: residual={residual:.3e} decrement={decrement:.3e} "
            f"|l|={np.max(np.abs(lam)):.3f}"
        )
        if residual <= options.residual_tol and (
            decrement <= options.residual_tol**2 or residual > STAGNATION_RATIO * previous
        ):
            break
        previous = residual

        t = 1.0
        slack = 4 * np.finfo(float).eps * max(1.0, abs(value))
        while t >= MIN_STEP:
            trial = lam + t * step
            trial_spec = _spectrum(stack, trial)
            trial_value = trial_spec.log_partition + trial @ target
            if trial_value <= value + ARMIJO * t * slope + slack:
                break
            t /= 2
        else:
            if residual <= options.residual_tol:
                break
            raise MaxIterations(f"Line search stalled at residual {residual:.3e}")

        lam, spec, value = trial, trial_spec, trial_value
        if np.max(np.abs(lam)) > options.multiplier_cap:
            logger.info(f"Multipliers exceeded cap {options.multiplier_cap:g} at iteration {iteration}")
            raise BoundaryDetected(lam, options.multiplier_cap)
    else:
        raise MaxIterations(
            f"Dual solver did not converge in {options.max_iter} iterations "
            f"(residual {residual:.3e})"
        )

    state = DualState(
        multipliers=[float(v) for v in lam],
        partition=float(np.exp(spec.log_partition)),
        log_partition=spec.log_partition,
        iterations=iteration,
    )
    logger.info(f"Dual converged in {iteration} iterations, residual {residual:.3e}")
    return build_result(_density(spec), c, Method.DUAL, None, state.multipliers, state, options)


def free_coefficient_closure(level: ObservationLevel) -> List[PauliString]:
    """Strings reached by products of two distinct measured observables, minus measured ones."""
    measured = set(level.observables)
    found = set()
    for a, b in itertools.combinations(level.observables, 2):
        _, product = multiply(a, b)
        if not product.is_identity and product not in measured:
            found.add(product)
    return sorted(found)


class _ScanBest(NamedTuple):
    entropy: float
    norm: float
    point: np.ndarray


def _better(candidate: _ScanBest, best: Optional[_ScanBest]) -> bool:
    if best is None or candidate.entropy > best.entropy + TIE_TOL:
        return True
    return abs(candidate.entropy - best.entropy) <= TIE_TOL and candidate.norm < best.norm


def _scan_grid(
    base: np.ndarray, free: np.ndarray, grid: np.ndarray, tol: float
) -> Optional[_ScanBest]:
    best = None
    for start in range(0, len(grid), SCAN_CHUNK):
        chunk = grid[start : start + SCAN_CHUNK]
        candidates = base[None, :, :] + np.tensordot(chunk, free, axes=1)
        values = np.linalg.eigvalsh(candidates)
        physical = values[:, 0] >= -tol
        if not np.any(physical):
            continue
        p = np.clip(values[physical], 0.0, None)
        entropy = -np.sum(xlogy(p, p), axis=1)
        points = chunk[physical]
        norms = np.linalg.norm(points, axis=1)
        top = entropy.max()
        tied = np.flatnonzero(entropy >= top - TIE_TOL)
        pick = tied[np.argmin(norms[tied])]
        local = _ScanBest(float(entropy[pick]), float(norms[pick]), points[pick])
        if _better(local, best):
            best = local
    return best


def solve_primal_scan(
    c: ConstraintSet, spec: ScanSpec, options: Optional[SolverOptions] = None
) -> ReconstructionResult:
    """Grid search of the maximum-entropy state over a box of unmeasured coefficients.

    Measured coefficients are fixed to the means, scanned ones take grid values and every
    other Bloch coefficient is zero. Non-physical candidates are discarded; the box is then
    re-centred on the maximizer and shrunk by spec.shrink_factor each refinement round.

    Raises:
        DuplicateObservable: a free string is measured
        NoPhysicalPoint: no candidate in the box is physical
    """
    options = options or SolverOptions()
    overlap = set(spec.free_coefficients) & set(c.level.observables)
    if overlap:
        raise DuplicateObservable(
            f"Free coefficients overlap the level: {', '.join(sorted(map(str, overlap)))}"
        )
    n = c.n
    dim = 2**n
    base = bloch_compose(c.as_dict(), n)
    free = np.stack([string_matrix(s) for s in spec.free_coefficients]) / dim
    low, high = spec.bounds
    k = len(spec.free_coefficients)

    half = (high - low) / 2
    axes = [np.linspace(low, high, spec.coarse_resolution)] * k
    best = None
    for round_index in range(spec.refinement_rounds + 1):
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, k)
        found = _scan_grid(base, free, grid, options.positivity_tol)
        if found is None:
            if best is None:
                raise NoPhysicalPoint(
                    f"No physical state in the {k}-dimensional box over "
                    f"{', '.join(map(str, spec.free_coefficients))}"
                )
            break
        if _better(found, best):
            best = found
        logger.debug(
            f"scan round {round_index}: S={best.entropy:.12g} at {np.round(best.point, 12)}"
        )
        half *= spec.shrink_factor
        axes = [
            np.clip(np.linspace(x - half, x + half, spec.coarse_resolution), low, high)
            for x in best.point
        ]

    matrix = base + np.tensordot(best.point, free, axes=1)
    logger.info(f"Primal scan maximum S={best.entropy:.12g}")
    return build_result(matrix, c, Method.PRIMAL_SCAN, None, None, None, options)


def reconstruct(c: ConstraintSet, options: Optional[SolverOptions] = None) -> ReconstructionResult:
    """Maximum-entropy reconstruction by the first applicable path.

    Order: closed form (unless disabled), dual Newton, then on a boundary either a primal
    scan over the product closure of the level (one to four strings) or the primal oracle.
    """
    options = options or SolverOptions()
    if not options.disable_closed_forms:
        result = try_closed_form(c, options)
        if result is not None:
            logger.info(f"Closed form for level {c.level.name or c.level.labels}")
            return result
    try:
        return solve_dual(c, options)
    except (BoundaryDetected, MaxIterations) as exc:
        logger.info(f"Dual solver gave up ({exc}); switching to a primal method")

    free = free_coefficient_closure(c.level)
    if 1 <= len(free) <= 4:
        logger.info(f"Primal scan over {', '.join(map(str, free))}")
        return solve_primal_scan(c, ScanSpec.from_overrides(free, options.scan), options)
    logger.info(f"Closure has {len(free)} strings; using the primal oracle")
    return oracle_maxent(c, options=options)
