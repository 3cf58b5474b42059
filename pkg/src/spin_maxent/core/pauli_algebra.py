"""Dense Pauli-string algebra and Bloch-basis decomposition.

Site 1 is the leftmost Kronecker factor. Basis kets follow |1> = (1, 0), |0> = (0, 1), so
sigma_z |1> = +|1>.
"""

import itertools
from functools import lru_cache, reduce
from typing import List, Mapping, Tuple, Union

import numpy as np

from spin_maxent.exceptions import DimensionMismatch, NonRealExpectation
from spin_maxent.models.density import DensityMatrix
from spin_maxent.models.pauli import AXES, Axis, BlochExpansion, PauliString, pauli

PAULI_I = np.array([[1, 0], [0, 1]], dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_SINGLE = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}
for _m in _SINGLE.values():
    _m.setflags(write=False)

# sigma_a sigma_b = phase * sigma_c
_PRODUCT = {
    ("X", "Y"): (1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("Y", "X"): (-1j, "Z"),
    ("Z", "Y"): (-1j, "X"),
    ("X", "Z"): (-1j, "Y"),
}

MatrixLike = Union[np.ndarray, DensityMatrix]


def _as_array(rho: MatrixLike) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def spin_count(dim: int) -> int:
    """n such that dim == 2^n."""
    n = int(round(np.log2(dim))) if dim > 0 else -1
    if n < 1 or 2**n != dim:
        raise DimensionMismatch(f"Dimension {dim} is not a power of two >= 2")
    return n


def pauli_matrix(axis: Union[str, Axis]) -> np.ndarray:
    """2x2 matrix of I, X, Y or Z."""
    key = axis.value if isinstance(axis, Axis) else str(axis).upper()
    if key not in _SINGLE:
        raise ValueError(f"Unknown site operator: {axis}")
    return _SINGLE[key]


@lru_cache(maxsize=None)
def _string_matrix(label: str) -> np.ndarray:
    matrix = reduce(np.kron, (_SINGLE[a] for a in label))
    matrix.setflags(write=False)
    return matrix


def string_matrix(s: Union[str, PauliString]) -> np.ndarray:
    """Kronecker product of the factor matrices, site 1 leftmost (read-only)."""
    return _string_matrix(pauli(s).label)


def multiply(a: Union[str, PauliString], b: Union[str, PauliString]) -> Tuple[complex, PauliString]:
    """Product of two Pauli strings as (phase, string)."""
    a, b = pauli(a), pauli(b)
    if a.n != b.n:
        raise DimensionMismatch(f"Cannot multiply {a} ({a.n} spins) by {b} ({b.n} spins)")
    phase = 1 + 0j
    factors = []
    for x, y in zip(a.factors, b.factors):
        if x == "I":
            factors.append(y)
        elif y == "I":
            factors.append(x)
        elif x == y:
            factors.append("I")
        else:
            p, c = _PRODUCT[(x, y)]
            phase *= p
            factors.append(c)
    return phase, PauliString(factors="".join(factors))


def expectation(rho: MatrixLike, s: Union[str, PauliString], tol: float = 1e-10) -> float:
    """Tr(rho G) for a Pauli string G."""
    matrix = _as_array(rho)
    g = string_matrix(s)
    if matrix.shape != g.shape:
        raise DimensionMismatch(f"rho is {matrix.shape}, observable {pauli(s)} is {g.shape}")
    value = np.einsum("ij,ji->", matrix, g)
    if abs(value.imag) > tol:
        raise NonRealExpectation(
            f"Tr(rho {pauli(s)}) has imaginary part {value.imag:.3e}; rho is not Hermitian"
        )
    return float(value.real)


@lru_cache(maxsize=None)
def operator_basis(n: int) -> Tuple[PauliString, ...]:
    """All 4^n Pauli strings in lexicographic order (I < X < Y < Z), identity first."""
    if n < 1:
        raise ValueError(f"Spin count must be >= 1, got {n}")
    return tuple(PauliString(factors="".join(t)) for t in itertools.product(AXES, repeat=n))


@lru_cache(maxsize=None)
def basis_stack(n: int) -> np.ndarray:
    """(4^n, 2^n, 2^n) array of basis matrices in operator_basis order."""
    stack = np.stack([string_matrix(s) for s in operator_basis(n)])
    stack.setflags(write=False)
    return stack


def bloch_decompose(rho: MatrixLike, tol: float = 1e-10) -> BlochExpansion:
    """Coefficients Tr(rho G) for every basis string."""
    matrix = _as_array(rho)
    n = spin_count(matrix.shape[0])
    values = np.einsum("kij,ji->k", basis_stack(n), matrix)
    worst = float(np.max(np.abs(values.imag)))
    if worst > tol:
        raise NonRealExpectation(f"Bloch coefficients have imaginary part {worst:.3e}")
    coefficients = {s.label: float(v) for s, v in zip(operator_basis(n), values.real)}
    coefficients["I" * n] = 1.0
    return BlochExpansion(n=n, coefficients=coefficients)


def bloch_compose(e: Union[BlochExpansion, Mapping[str, float]], n: int = None) -> np.ndarray:
    """(1/2^n) sum_s coeff(s) G_s. Hermitian with unit trace; positivity is not checked.

    Accepts a full BlochExpansion or a sparse mapping label -> coefficient (missing
    strings are zero, the identity is always 1).
    """
    if isinstance(e, BlochExpansion):
        n, coefficients = e.n, dict(e.coefficients)
    else:
        coefficients = {pauli(k).label: float(v) for k, v in e.items()}
        if n is None:
            if not coefficients:
                raise ValueError("Spin count is required for an empty expansion")
            n = len(next(iter(coefficients)))
    dim = 2**n
    matrix = np.eye(dim, dtype=complex)
    for label, value in coefficients.items():
        if len(label) != n:
            raise DimensionMismatch(f"String {label} does not act on {n} spins")
        if set(label) == {"I"} or value == 0.0:
            continue
        matrix = matrix + value * _string_matrix(label)
    return matrix / dim


def level_matrices(observables) -> np.ndarray:
    """Stack of observable matrices, shape (m, d, d)."""
    observables = [pauli(o) for o in observables]
    if not observables:
        return np.zeros((0, 1, 1), dtype=complex)
    return np.stack([string_matrix(o) for o in observables])


def all_strings(n: int) -> List[PauliString]:
    """Non-identity basis strings."""
    return list(operator_basis(n)[1:])
