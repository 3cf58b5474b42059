"""Analytic maximum-entropy reconstructions.

Covered levels: any single-spin level, uncorrelated levels built from single-site
observables, the five-observable level {ZZ, XX, XY, YX, YY} (G2) and its reduction without
ZZ (H2), and the three-spin levels B3 and C3.

All matrices use the standard basis |11>, |10>, |01>, |00> for two spins. On G2 the
reconstruction is block diagonal:

    rho = 1/4 [[1+zz, 0,    0,    D*  ],
               [0,    1-zz, B*,   0   ],
               [0,    B,    1-zz, 0   ],
               [D,    0,    0,    1+zz]]

with B = xx + yy - i(xy - yx) and D = xx - yy + i(xy + yx).
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import xlogy

from spin_maxent.config import SolverOptions
from spin_maxent.core.obslevel import custom_level, named_level
from spin_maxent.core.pauli_algebra import PAULI_I, string_matrix
from spin_maxent.core.results import build_result
from spin_maxent.exceptions import BlochNormExceeded, MultiplierDomainError, NonPhysicalMeans
from spin_maxent.models.levels import ConstraintSet, ObservationLevel
from spin_maxent.models.results import (
    Method,
    OGIntermediates,
    OHIntermediates,
    ReconstructionResult,
)

logger = logging.getLogger(__name__)

PHYSICAL_TOL = 1e-12
SINHC_SERIES_BELOW = 1e-6

OG_LABELS = ("ZZ", "XX", "XY", "YX", "YY")
OH_LABELS = ("XX", "XY", "YX", "YY")
B3_LABELS = ("ZZI", "IZZ")
C3_LABELS = ("ZZI", "IZZ", "XXX", "YYY")

MeansLike = Union[Sequence[float], Mapping[str, float]]


def sinhc(x: float) -> float:
    """sinh(x)/x, with the series 1 + x^2/6 near zero."""
    if abs(x) < SINHC_SERIES_BELOW:
        return 1.0 + x * x / 6.0
    return float(np.sinh(x) / x)


def _ordered(xi: MeansLike, labels: Sequence[str]) -> Tuple[float, ...]:
    if isinstance(xi, Mapping):
        return tuple(float(xi[label]) for label in labels)
    values = tuple(float(v) for v in xi)
    if len(values) != len(labels):
        raise ValueError(f"Expected {len(labels)} means ({', '.join(labels)}), got {len(values)}")
    return values


def _binary_entropy(x: float) -> float:
    """Entropy of the two-point distribution ((1+x)/2, (1-x)/2)."""
    p = np.clip(np.array([(1 + x) / 2, (1 - x) / 2]), 0.0, 1.0)
    return float(-np.sum(xlogy(p, p)))


def _constraints(level: ObservationLevel, means: Mapping[str, float]) -> ConstraintSet:
    return ConstraintSet(level=level, means=tuple(means[label] for label in level.labels))


# Single spin


def single_spin_gcdo(
    means: Mapping[str, float],
    level: Optional[ObservationLevel] = None,
    options: Optional[SolverOptions] = None,
) -> ReconstructionResult:
    """rho = (I + m.sigma)/2 from any subset of <X>, <Y>, <Z>; unmeasured components are 0.

    Raises:
        BlochNormExceeded: |m| > 1
    """
    means = {str(k).upper(): float(v) for k, v in means.items()}
    unknown = set(means) - {"X", "Y", "Z"}
    if unknown:
        raise ValueError(f"Single-spin means must be keyed by X, Y, Z; got {sorted(unknown)}")
    level = level or custom_level(list(means), n=1)
    m = np.array([means.get(axis, 0.0) for axis in "XYZ"])
    norm = float(np.linalg.norm(m))
    if norm > 1.0 + PHYSICAL_TOL:
        raise BlochNormExceeded(f"Bloch vector length {norm:.15g} exceeds 1")
    if norm > 1.0:
        m, norm = m / norm, 1.0

    matrix = 0.5 * (PAULI_I + sum(v * string_matrix(a) for v, a in zip(m, "XYZ")))
    entropy = _binary_entropy(norm)

    multipliers = None
    if norm < 1.0:
        scale = -np.arctanh(norm) / norm if norm > 0 else 0.0
        lam = dict(zip("XYZ", scale * m))
        multipliers = [lam[label] for label in level.labels]

    logger.debug(f"single-spin closed form, |m| = {norm:.6g}")
    return build_result(
        matrix, _constraints(level, means), Method.CLOSED_FORM, entropy, multipliers, None, options
    )


def product_gcdo(results: Sequence[ReconstructionResult]) -> np.ndarray:
    """Kronecker product of single-spin reconstructions, site 1 leftmost."""
    matrix = np.ones((1, 1), dtype=complex)
    for r in results:
        if r.rho.n != 1:
            raise ValueError("product_gcdo takes single-spin results")
        matrix = np.kron(matrix, r.rho.matrix)
    return matrix


def _is_local(level: ObservationLevel) -> bool:
    return all(sum(a != "I" for a in obs.factors) == 1 for obs in level.observables)


def uncorrelated_gcdo(
    c: ConstraintSet, options: Optional[SolverOptions] = None
) -> ReconstructionResult:
    """Levels of single-site observables only: product of per-site reconstructions."""
    if not _is_local(c.level):
        raise ValueError("Level contains correlation observables")
    per_site: List[Dict[str, float]] = [{} for _ in range(c.n)]
    for obs, mean in zip(c.level.observables, c.means):
        site = next(i for i, a in enumerate(obs.factors) if a != "I")
        per_site[site][obs.factors[site]] = mean
    sites = [single_spin_gcdo(means, options=options) for means in per_site]

    multipliers = None
    if all(r.multipliers is not None for r in sites):
        lookup = {}
        for i, r in enumerate(sites):
            for obs, value in zip(r.level.observables, r.multipliers):
                lookup["I" * i + obs.label + "I" * (c.n - i - 1)] = value
        multipliers = [lookup[label] for label in c.level.labels]

    entropy = sum(r.entropy for r in sites)
    return build_result(
        product_gcdo(sites), c, Method.CLOSED_FORM, entropy, multipliers, None, options
    )


# G2 = {ZZ, XX, XY, YX, YY}


def _bd(xx: float, xy: float, yx: float, yy: float) -> Tuple[complex, complex]:
    B = complex(xx + yy, -(xy - yx))
    D = complex(xx - yy, xy + yx)
    return B, D


def _og_m(zz: float, B: complex, D: complex) -> Tuple[float, float, float, float]:
    return (1 + zz + abs(D), 1 + zz - abs(D), 1 - zz + abs(B), 1 - zz - abs(B))


def og_intermediates(xi: MeansLike) -> OGIntermediates:
    """B, D, M and, away from the boundary, the complex multiplier combinations a, b, d."""
    zz, xx, xy, yx, yy = _ordered(xi, OG_LABELS)
    B, D = _bd(xx, xy, yx, yy)
    M = _og_m(zz, B, D)
    a = b = d = None
    if min(M) > 0:
        a = 0.25 * np.log(M[2] * M[3] / (M[0] * M[1]))
        mod_b = 0.5 * np.log(M[2] / M[3])
        mod_d = 0.5 * np.log(M[0] / M[1])
        b = -mod_b * B / abs(B) if abs(B) > 0 else 0j
        d = -mod_d * D / abs(D) if abs(D) > 0 else 0j
    return OGIntermediates(B=B, D=D, M=M, a=a, b=b, d=d)


def _og_matrix(zz: float, B: complex, D: complex) -> np.ndarray:
    matrix = np.zeros((4, 4), dtype=complex)
    matrix[0, 0] = matrix[3, 3] = 1 + zz
    matrix[1, 1] = matrix[2, 2] = 1 - zz
    matrix[0, 3] = np.conj(D)
    matrix[3, 0] = D
    matrix[1, 2] = np.conj(B)
    matrix[2, 1] = B
    return matrix / 4


def _entropy_quarters(M: Sequence[float]) -> float:
    p = np.clip(np.asarray(M, dtype=float) / 4, 0.0, None)
    return float(-np.sum(xlogy(p, p)))


def og_entropy(xi: MeansLike) -> float:
    """-sum (M_i/4) ln(M_i/4)."""
    return _entropy_quarters(og_intermediates(xi).M)


def og_multipliers(xi: MeansLike) -> Tuple[float, float, float, float, float]:
    """(l_zz, l_xx, l_xy, l_yx, l_yy) for interior means.

    Raises:
        MultiplierDomainError: some M_i <= 0 (pure-state boundary, multipliers infinite)
    """
    inter = og_intermediates(xi)
    if inter.a is None:
        raise MultiplierDomainError(
            f"M = {tuple(round(m, 15) for m in inter.M)} has a non-positive entry; "
            "multipliers are infinite"
        )
    b, d = complex(inter.b), complex(inter.d)
    l_xx = (b.real + d.real) / 2
    l_yy = (b.real - d.real) / 2
    l_xy = (d.imag - b.imag) / 2
    l_yx = (d.imag + b.imag) / 2
    return (float(inter.a), l_xx, l_xy, l_yx, l_yy)


def og_exponential(multipliers: Sequence[float]) -> Tuple[np.ndarray, float]:
    """exp(-(l_zz ZZ + l_xx XX + l_xy XY + l_yx YX + l_yy YY)) and its trace."""
    a, l_xx, l_xy, l_yx, l_yy = (float(v) for v in multipliers)
    b = complex(l_xx + l_yy, -(l_xy - l_yx))
    d = complex(l_xx - l_yy, l_xy + l_yx)
    ea, ema = np.exp(a), np.exp(-a)
    matrix = np.zeros((4, 4), dtype=complex)
    matrix[0, 0] = matrix[3, 3] = ema * np.cosh(abs(d))
    matrix[0, 3] = -ema * sinhc(abs(d)) * np.conj(d)
    matrix[3, 0] = -ema * sinhc(abs(d)) * d
    matrix[1, 1] = matrix[2, 2] = ea * np.cosh(abs(b))
    matrix[1, 2] = -ea * sinhc(abs(b)) * np.conj(b)
    matrix[2, 1] = -ea * sinhc(abs(b)) * b
    partition = 2 * ema * np.cosh(abs(d)) + 2 * ea * np.cosh(abs(b))
    return matrix, float(partition)


def og_partition(xi: MeansLike) -> float:
    """Z = 4 / (M1 M2 M3 M4)^(1/4).

    Raises:
        MultiplierDomainError: some M_i <= 0
    """
    M = og_intermediates(xi).M
    if min(M) <= 0:
        raise MultiplierDomainError("Partition function diverges on the boundary")
    return float(4.0 / np.prod(M) ** 0.25)


def og_gcdo(
    xi: MeansLike,
    level: Optional[ObservationLevel] = None,
    options: Optional[SolverOptions] = None,
) -> ReconstructionResult:
    """Closed-form reconstruction on G2 from (zz, xx, xy, yx, yy).

    Raises:
        NonPhysicalMeans: some M_i < 0
    """
    zz, xx, xy, yx, yy = values = _ordered(xi, OG_LABELS)
    B, D = _bd(xx, xy, yx, yy)
    M = _og_m(zz, B, D)
    if min(M) < -PHYSICAL_TOL:
        raise NonPhysicalMeans(f"G2 means give M = {M}; no physical state matches")
    level = level or named_level("G2")
    means = dict(zip(OG_LABELS, values))
    multipliers = None
    if min(M) > 0:
        lam = dict(zip(OG_LABELS, og_multipliers(values)))
        multipliers = [lam[label] for label in level.labels]
    logger.debug(f"G2 closed form, M = {M}")
    return build_result(
        _og_matrix(zz, B, D),
        _constraints(level, means),
        Method.CLOSED_FORM,
        _entropy_quarters(M),
        multipliers,
        None,
        options,
    )


# H2 = {XX, XY, YX, YY}


def oh_intermediates(xi: MeansLike) -> OHIntermediates:
    """N_1..N_4 and the predicted <ZZ> = xy*yx - xx*yy."""
    xx, xy, yx, yy = _ordered(xi, OH_LABELS)
    B, D = _bd(xx, xy, yx, yy)
    mod_b, mod_d = abs(B), abs(D)
    N = (
        1 + (mod_d + mod_b) / 2,
        1 + (mod_d - mod_b) / 2,
        1 - (mod_d - mod_b) / 2,
        1 - (mod_d + mod_b) / 2,
    )
    return OHIntermediates(N=N, t=xy * yx - xx * yy)


def oh_gcdo(
    xi: MeansLike,
    level: Optional[ObservationLevel] = None,
    options: Optional[SolverOptions] = None,
) -> ReconstructionResult:
    """Closed-form reconstruction on H2; equals og_gcdo with zz set to the predicted value.

    Raises:
        NonPhysicalMeans: some N_i < 0
    """
    xx, xy, yx, yy = values = _ordered(xi, OH_LABELS)
    inter = oh_intermediates(values)
    if min(inter.N) < -PHYSICAL_TOL:
        raise NonPhysicalMeans(f"H2 means give N = {inter.N}; no physical state matches")
    level = level or named_level("H2")
    B, D = _bd(xx, xy, yx, yy)
    p = np.clip(np.asarray(inter.N) / 2, 0.0, None)
    entropy = float(-np.sum(xlogy(p, p)))

    multipliers = None
    full = (inter.t,) + values
    if min(og_intermediates(full).M) > 0:
        lam = dict(zip(OG_LABELS, og_multipliers(full)))
        multipliers = [lam[label] for label in level.labels]
    logger.debug(f"H2 closed form, predicted zz = {inter.t:.12g}")
    return build_result(
        _og_matrix(inter.t, B, D),
        _constraints(level, dict(zip(OH_LABELS, values))),
        Method.CLOSED_FORM,
        entropy,
        multipliers,
        None,
        options,
    )


# Three spins


def _atanh_or_none(values: Sequence[float]) -> Optional[List[float]]:
    if any(abs(v) >= 1.0 for v in values):
        return None
    return [-float(np.arctanh(v)) for v in values]


def _factor(coefficients: Mapping[str, float]) -> np.ndarray:
    return np.eye(8, dtype=complex) + sum(v * string_matrix(k) for k, v in coefficients.items())


def ghz_b3_gcdo(
    xi12: float,
    xi23: float,
    level: Optional[ObservationLevel] = None,
    options: Optional[SolverOptions] = None,
) -> ReconstructionResult:
    """rho = (I + xi12 ZZI)(I + xi23 IZZ)/8; ZIZ is predicted as xi12 * xi23."""
    for value in (xi12, xi23):
        if abs(value) > 1.0 + PHYSICAL_TOL:
            raise NonPhysicalMeans(f"Correlation {value} outside [-1, 1]")
    xi12, xi23 = (float(np.clip(v, -1.0, 1.0)) for v in (xi12, xi23))
    matrix = _factor({"ZZI": xi12}) @ _factor({"IZZ": xi23}) / 8
    if np.min(np.real(np.diag(matrix))) < -PHYSICAL_TOL:
        raise NonPhysicalMeans("B3 reconstruction has a negative population")
    level = level or named_level("B3")
    lam = _atanh_or_none((xi12, xi23))
    multipliers = None
    if lam is not None:
        lookup = dict(zip(B3_LABELS, lam))
        multipliers = [lookup[label] for label in level.labels]
    entropy = np.log(2) + _binary_entropy(xi12) + _binary_entropy(xi23)
    return build_result(
        matrix,
        _constraints(level, dict(zip(B3_LABELS, (xi12, xi23)))),
        Method.CLOSED_FORM,
        entropy,
        multipliers,
        None,
        options,
    )


def ghz_c3_gcdo(
    xi12: float,
    xi23: float,
    zeta_x: float,
    zeta_y: float,
    level: Optional[ObservationLevel] = None,
    options: Optional[SolverOptions] = None,
) -> ReconstructionResult:
    """rho = (I + xi12 ZZI)(I + xi23 IZZ)(I + zeta_x XXX + zeta_y YYY)/8.

    ZZI and IZZ commute with XXX and YYY, and XXX anticommutes with YYY, so the three
    factors commute and each is positive iff |xi| <= 1 and zeta_x^2 + zeta_y^2 <= 1. The
    expansion has exactly eleven non-identity terms.

    Raises:
        NonPhysicalMeans: the factors are not all positive
    """
    mod_zeta = float(np.hypot(zeta_x, zeta_y))
    for value in (xi12, xi23, mod_zeta):
        if abs(value) > 1.0 + PHYSICAL_TOL:
            raise NonPhysicalMeans(
                f"C3 means (xi={xi12}, {xi23}; |zeta|={mod_zeta}) admit no physical state"
            )
    xi12, xi23 = (float(np.clip(v, -1.0, 1.0)) for v in (xi12, xi23))
    if mod_zeta > 1.0:
        zeta_x, zeta_y, mod_zeta = zeta_x / mod_zeta, zeta_y / mod_zeta, 1.0
    matrix = (
        _factor({"ZZI": xi12}) @ _factor({"IZZ": xi23}) @ _factor({"XXX": zeta_x, "YYY": zeta_y})
    ) / 8
    level = level or named_level("C3")

    multipliers = None
    lam = _atanh_or_none((xi12, xi23, mod_zeta))
    if lam is not None:
        scale = lam[2] / mod_zeta if mod_zeta > 0 else 0.0
        lookup = dict(zip(C3_LABELS, (lam[0], lam[1], scale * zeta_x, scale * zeta_y)))
        multipliers = [lookup[label] for label in level.labels]

    entropy = _binary_entropy(xi12) + _binary_entropy(xi23) + _binary_entropy(mod_zeta)
    logger.debug(f"C3 closed form, |zeta| = {mod_zeta:.6g}")
    return build_result(
        matrix,
        _constraints(level, dict(zip(C3_LABELS, (xi12, xi23, zeta_x, zeta_y)))),
        Method.CLOSED_FORM,
        entropy,
        multipliers,
        None,
        options,
    )


def try_closed_form(
    c: ConstraintSet, options: Optional[SolverOptions] = None
) -> Optional[ReconstructionResult]:
    """Closed-form reconstruction when the level matches one, else None.

    Closed forms are exact, so their infeasibility errors are final.
    """
    labels = frozenset(c.level.labels)
    means = c.as_dict()
    if not labels:
        return None
    if c.n == 1:
        return single_spin_gcdo(means, c.level, options)
    if _is_local(c.level):
        return uncorrelated_gcdo(c, options)
    if labels == frozenset(OG_LABELS):
        return og_gcdo(means, c.level, options)
    if labels == frozenset(OH_LABELS):
        return oh_gcdo(means, c.level, options)
    if labels == frozenset(B3_LABELS):
        return ghz_b3_gcdo(means["ZZI"], means["IZZ"], c.level, options)
    if labels == frozenset(C3_LABELS):
        return ghz_c3_gcdo(means["ZZI"], means["IZZ"], means["XXX"], means["YYY"], c.level, options)
    return None
