"""Assembly of ReconstructionResult objects shared by all reconstruction paths."""

import logging
from typing import Optional, Sequence

import numpy as np

from spin_maxent.config import SolverOptions
from spin_maxent.core.density import validate, von_neumann_entropy
from spin_maxent.core.pauli_algebra import bloch_decompose, expectation
from spin_maxent.exceptions import MaxIterations
from spin_maxent.models.levels import ConstraintSet
from spin_maxent.models.pauli import BlochExpansion
from spin_maxent.models.results import DualState, Method, ReconstructionResult

logger = logging.getLogger(__name__)

ENTROPY_AGREEMENT_TOL = 1e-8


def constraint_residual(rho, c: ConstraintSet) -> float:
    """max_nu |Tr(rho G_nu) - mean_nu|, zero for an empty level."""
    if not c.level.observables:
        return 0.0
    return max(abs(expectation(rho, g) - m) for g, m in zip(c.level.observables, c.means))


def build_result(
    matrix: np.ndarray,
    c: ConstraintSet,
    method: Method,
    entropy: Optional[float] = None,
    multipliers: Optional[Sequence[float]] = None,
    dual: Optional[DualState] = None,
    options: Optional[SolverOptions] = None,
) -> ReconstructionResult:
    """Validate the matrix and attach entropy, predictions and residual.

    Raises:
        MaxIterations: the residual exceeds options.residual_tol

    When an analytic entropy is supplied it is reported as is, after checking it against
    the eigenvalue route.
    """
    options = options or SolverOptions()
    rho = validate(matrix, tol=options.positivity_tol)
    spectral = von_neumann_entropy(rho)
    if entropy is None:
        entropy = spectral
    elif abs(entropy - spectral) > ENTROPY_AGREEMENT_TOL:
        logger.warning(
            f"Analytic entropy {entropy:.12g} disagrees with spectrum ({spectral:.12g})"
        )
    residual = constraint_residual(rho, c)
    if residual > options.residual_tol:
        raise MaxIterations(
            f"{Method(method).value} result misses the means by {residual:.3e} "
            f"(tolerance {options.residual_tol:g})"
        )
    return ReconstructionResult(
        rho=rho,
        entropy=max(float(entropy), 0.0),
        multipliers=None if multipliers is None else [float(v) for v in multipliers],
        predicted=bloch_decompose(rho),
        method=method,
        residual=residual,
        level=c.level,
        dual=dual,
    )


def predicted_means(r: ReconstructionResult) -> BlochExpansion:
    """Full Bloch expansion of the reconstructed state.

    Entries for unmeasured strings are the maximum-entropy predictions.
    """
    return bloch_decompose(r.rho)
