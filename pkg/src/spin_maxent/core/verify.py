"""End-to-end verification suites.

Each suite recomputes a family of known results (Bell and GHZ reconstructions, the
single-spin entropies, the closed-form identities of the five-observable level) and
returns one VerificationCheck per comparison. Nothing is raised for a failed check; the
CLI turns failures into its exit status.
"""

import logging
from enum import Enum
from typing import Callable, Dict, List, Optional

import numpy as np

from spin_maxent.config import SolverOptions
from spin_maxent.core.closed_forms import (
    OG_LABELS,
    OH_LABELS,
    og_entropy,
    og_exponential,
    og_gcdo,
    og_intermediates,
    og_multipliers,
    oh_gcdo,
    oh_intermediates,
)
from spin_maxent.core.density import entropy_from_eigenvalues, max_norm
from spin_maxent.core.obslevel import constraints_from_state, named_level
from spin_maxent.core.obslevel import reduce as reduce_level
from spin_maxent.core.solver import reconstruct, solve_primal_scan
from spin_maxent.core.states import (
    BellFamily,
    bell,
    ghz,
    ghz_phase_average,
    phase_averaged_ghz,
    random_mixed_state,
    single_spin,
)
from spin_maxent.models.reports import VerificationCheck
from spin_maxent.models.results import ScanSpec

logger = logging.getLogger(__name__)

LN2 = float(np.log(2))
BELL_PHASES = (0.3, 1.1, 2.5)
GRID_POINTS = 10


class Suite(str, Enum):
    """Verification suites."""

    BELL = "bell"
    GHZ = "ghz"
    APPENDIX = "appendix"
    SINGLE = "single"
    ALL = "all"


def _close(suite: str, name: str, observed: float, expected: float, tol: float):
    observed, expected = float(observed), float(expected)
    return VerificationCheck(
        suite=suite,
        name=name,
        passed=bool(abs(observed - expected) <= tol),
        observed=observed,
        expected=expected,
        tolerance=tol,
    )


def _above(suite: str, name: str, observed: float, bound: float):
    observed = float(observed)
    return VerificationCheck(
        suite=suite,
        name=name,
        passed=bool(observed > bound),
        observed=observed,
        expected=bound,
        tolerance=0.0,
    )


def _binary_entropy(p: float) -> float:
    return entropy_from_eigenvalues([p, 1.0 - p])


def _phase_grid(points: int = GRID_POINTS) -> np.ndarray:
    return np.linspace(0.0, 2 * np.pi, points, endpoint=False)


def bell_suite(options: Optional[SolverOptions] = None) -> List[VerificationCheck]:
    """Entropy ladder, partial and full completeness, and reductions of the Bell levels."""
    options = options or SolverOptions()
    suite = Suite.BELL.value
    checks = []

    ladder = {"A2": 2 * LN2, "B2": LN2, "C2": LN2, "D2": LN2}
    for phi in BELL_PHASES:
        rho = bell(phi).projector()
        for key, expected in ladder.items():
            r = reconstruct(constraints_from_state(rho, named_level(key)), options)
            checks.append(_close(suite, f"S({key}) at phi={phi}", r.entropy, expected, 1e-6))

    e2 = named_level("E2")
    for phi in _phase_grid(2 * GRID_POINTS):
        r = reconstruct(constraints_from_state(bell(phi).projector(), e2), options)
        expected = _binary_entropy((1 - np.cos(phi)) / 2)
        checks.append(_close(suite, f"S(E2) at phi={phi:.4f}", r.entropy, expected, 1e-6))
    for label, state in (
        ("psi phi=0", bell(0.0)),
        ("triplet", bell(0.0, BellFamily.PHI_PM)),
        ("singlet", bell(np.pi, BellFamily.PHI_PM)),
    ):
        r = reconstruct(constraints_from_state(state.projector(), e2), options)
        checks.append(
            _close(suite, f"E2 recovers {label}", max_norm(r.rho, state.projector()), 0.0, 1e-8)
        )

    g2 = named_level("G2")
    generic = options.model_copy(update={"disable_closed_forms": True})
    for phi in _phase_grid():
        target = bell(phi).projector()
        c = constraints_from_state(target, g2)
        closed = og_gcdo(c.as_dict())
        checks.append(
            _close(suite, f"G2 recovers phi={phi:.4f}", max_norm(closed.rho, target), 0.0, 1e-8)
        )
        checks.append(_close(suite, f"S(G2) at phi={phi:.4f}", closed.entropy, 0.0, 1e-8))
        r = reconstruct(c, generic)
        checks.append(
            _close(
                suite,
                f"generic G2 agrees at phi={phi:.4f}",
                max_norm(r.rho, closed.rho),
                0.0,
                1e-6,
            )
        )

    h2 = named_level("H2")
    for phi in BELL_PHASES:
        target = bell(phi).projector()
        c = constraints_from_state(target, h2)
        t = oh_intermediates(c.as_dict()).t
        checks.append(_close(suite, f"H2 predicted zz at phi={phi}", t, 1.0, 1e-12))
        scan = solve_primal_scan(
            c, ScanSpec.from_overrides(["ZZ"], options.scan), options
        )
        checks.append(
            _close(suite, f"H2 scan argmax zz at phi={phi}", scan.predicted["ZZ"], 1.0, 1e-3)
        )
        checks.append(
            _close(suite, f"H2 scan recovers phi={phi}", max_norm(scan.rho, target), 0.0, 1e-3)
        )

    target = bell(np.pi / 4).projector()
    for removed in (("ZZ",), ("XX",), ("YY",), ("XY",), ("YX",)):
        level = reduce_level(g2, removed)
        r = reconstruct(constraints_from_state(target, level), options)
        checks.append(_close(suite, f"G2 - {removed[0]} complete", r.entropy, 0.0, 1e-6))
    level = reduce_level(g2, ("XY", "YX"))
    r = reconstruct(constraints_from_state(target, level), options)
    checks.append(_above(suite, "G2 - {XY, YX} incomplete", r.entropy, 0.01))
    return checks


def _ghz_pattern(phi: float) -> Dict[str, float]:
    c, s = np.cos(phi), np.sin(phi)
    return {
        "XXX": c,
        "YYY": -s,
        "YYX": -c,
        "XYY": -c,
        "YXY": -c,
        "XXY": s,
        "YXX": s,
        "XYX": s,
        "ZZI": 1.0,
        "IZZ": 1.0,
        "ZIZ": 1.0,
    }


def ghz_suite(options: Optional[SolverOptions] = None) -> List[VerificationCheck]:
    """Phase-averaged mixture on B3, pure recovery on C3 and the transverse B3 levels."""
    options = options or SolverOptions()
    suite = Suite.GHZ.value
    checks = []

    mixture = phase_averaged_ghz()
    checks.append(
        _close(
            suite,
            "phase average equals mixture",
            max_norm(ghz_phase_average(), mixture),
            0.0,
            1e-8,
        )
    )
    for phi in BELL_PHASES:
        r = reconstruct(constraints_from_state(ghz(phi).projector(), named_level("B3")), options)
        checks.append(_close(suite, f"S(B3) at phi={phi}", r.entropy, LN2, 1e-8))
        checks.append(
            _close(suite, f"B3 gives mixture at phi={phi}", max_norm(r.rho, mixture), 0.0, 1e-8)
        )

    mixed = np.eye(8) / 8
    for key in ("B3x", "B3y"):
        r = reconstruct(constraints_from_state(ghz(0.7).projector(), named_level(key)), options)
        checks.append(_close(suite, f"{key} gives I/8", max_norm(r.rho, mixed), 0.0, 1e-8))
        checks.append(_close(suite, f"S({key})", r.entropy, 3 * LN2, 1e-8))

    c3 = named_level("C3")
    for phi in _phase_grid():
        target = ghz(phi).projector()
        r = reconstruct(constraints_from_state(target, c3), options)
        checks.append(
            _close(suite, f"C3 recovers phi={phi:.4f}", max_norm(r.rho, target), 0.0, 1e-8)
        )
        checks.append(_close(suite, f"S(C3) at phi={phi:.4f}", r.entropy, 0.0, 1e-8))
        deviation = max(abs(r.predicted[k] - v) for k, v in _ghz_pattern(phi).items())
        checks.append(_close(suite, f"C3 sign pattern at phi={phi:.4f}", deviation, 0.0, 1e-8))
    return checks


def appendix_suite(samples: int = 100, seed: int = 0) -> List[VerificationCheck]:
    """Identities of the G2/H2 closed forms, worst case over random physical means."""
    suite = Suite.APPENDIX.value
    rng = np.random.default_rng(seed)
    g2, h2 = named_level("G2"), named_level("H2")
    worst = dict.fromkeys(
        ("eigenvalues", "entropy", "stationary", "trace", "reduction", "exponential"), 0.0
    )
    step = 1e-6

    for _ in range(samples):
        rho = random_mixed_state(2, rng)
        xi = constraints_from_state(rho, g2).as_dict()
        inter = og_intermediates(xi)
        result = og_gcdo(xi)
        values = np.sort(result.rho.eigenvalues())
        worst["eigenvalues"] = max(
            worst["eigenvalues"], float(np.max(np.abs(values - np.sort(inter.M) / 4)))
        )
        worst["entropy"] = max(
            worst["entropy"], abs(og_entropy(xi) - entropy_from_eigenvalues(values))
        )
        worst["trace"] = max(worst["trace"], abs(sum(inter.M) - 4.0))

        lam = og_multipliers(xi)
        matrix, partition = og_exponential(lam)
        worst["exponential"] = max(
            worst["exponential"], max_norm(matrix / partition, result.rho)
        )

        h = constraints_from_state(rho, h2).as_dict()
        t = oh_intermediates(h).t
        rest = tuple(h[label] for label in OH_LABELS)
        slope = (og_entropy((t + step,) + rest) - og_entropy((t - step,) + rest)) / (2 * step)
        worst["stationary"] = max(worst["stationary"], abs(slope))
        worst["reduction"] = max(
            worst["reduction"], max_norm(oh_gcdo(h).rho, og_gcdo((t,) + rest).rho)
        )

    logger.debug(f"appendix worst deviations over {samples} samples: {worst}")
    tolerances = {
        "eigenvalues": 1e-10,
        "entropy": 1e-10,
        "stationary": 1e-6,
        "trace": 1e-14,
        "reduction": 1e-12,
        "exponential": 1e-10,
    }
    names = {
        "eigenvalues": "eigenvalues equal M/4",
        "entropy": "M entropy equals spectral entropy",
        "stationary": "predicted zz is stationary",
        "trace": "sum of M is 4",
        "reduction": f"{'/'.join(OH_LABELS)} form equals {'/'.join(OG_LABELS)} form at t",
        "exponential": "exp(-lambda.G)/Z equals closed form",
    }
    return [_close(suite, names[k], worst[k], 0.0, tolerances[k]) for k in worst]


def single_suite(
    samples: int = 20, seed: int = 0, options: Optional[SolverOptions] = None
) -> List[VerificationCheck]:
    """Single-spin entropies on A1/B1/C1 from random pure states."""
    options = options or SolverOptions()
    suite = Suite.SINGLE.value
    rng = np.random.default_rng(seed)
    checks = []
    for theta, phi in zip(rng.uniform(0, np.pi, samples), rng.uniform(-np.pi, np.pi, samples)):
        state = single_spin(theta, phi).projector()
        z = np.cos(2 * theta)
        x = np.sin(2 * theta) * np.cos(phi)
        expected = {
            "A1": _binary_entropy((1 + abs(z)) / 2),
            "B1": _binary_entropy((1 + np.hypot(z, x)) / 2),
            "C1": 0.0,
        }
        for key, value in expected.items():
            r = reconstruct(constraints_from_state(state, named_level(key)), options)
            checks.append(
                _close(suite, f"S({key}) at theta={theta:.4f}", r.entropy, value, 1e-8)
            )
        checks.append(
            _close(suite, f"C1 recovers theta={theta:.4f}", max_norm(r.rho, state), 0.0, 1e-8)
        )
    return checks


_RUNNERS: Dict[Suite, Callable[[SolverOptions], List[VerificationCheck]]] = {
    Suite.BELL: bell_suite,
    Suite.GHZ: ghz_suite,
    Suite.APPENDIX: lambda options: appendix_suite(seed=options.seed),
    Suite.SINGLE: lambda options: single_suite(seed=options.seed, options=options),
}


def run_suite(
    suite: Suite = Suite.ALL, options: Optional[SolverOptions] = None
) -> List[VerificationCheck]:
    """Run one suite, or every suite for Suite.ALL."""
    options = options or SolverOptions()
    suite = Suite(suite)
    selected = list(_RUNNERS) if suite is Suite.ALL else [suite]
    checks = []
    for item in selected:
        logger.info(f"Running {item.value} suite")
        checks.extend(_RUNNERS[item](options))
    failed = sum(not check.passed for check in checks)
    logger.info(f"{len(checks) - failed}/{len(checks)} checks passed")
    return checks
