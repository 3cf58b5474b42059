"""Unit tests for Pauli-string algebra and Bloch decomposition."""

import numpy as np
import pytest

from spin_maxent.core.pauli_algebra import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    all_strings,
    bloch_compose,
    bloch_decompose,
    expectation,
    multiply,
    operator_basis,
    spin_count,
    string_matrix,
)
from spin_maxent.core.states import basis_ket, bell
from spin_maxent.exceptions import DimensionMismatch, NonRealExpectation
from spin_maxent.models.pauli import PauliString


class TestStringMatrix:
    """Tests for Kronecker products of site operators."""

    def test_site_one_is_leftmost(self):
        """Test XI acts on the first Kronecker factor."""
        expected = np.kron(PAULI_X, np.eye(2))
        assert np.array_equal(string_matrix("XI"), expected)

    def test_z_eigenvalue_of_up(self):
        """Test sigma_z |1> = +|1> with |1> = (1, 0)."""
        up = basis_ket("1")
        assert np.allclose(string_matrix("Z") @ up, up)

    def test_result_is_read_only(self):
        """Test cached matrices cannot be mutated."""
        with pytest.raises(ValueError):
            string_matrix("ZZ")[0, 0] = 5

    def test_strings_square_to_identity(self):
        """Test G^2 = I for every three-spin string."""
        strings = operator_basis(3)
        assert len(strings) == 64
        for s in strings:
            g = string_matrix(s)
            assert np.allclose(g @ g, np.eye(8), atol=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_trace_orthogonal(self, n):
        """Test Tr(G_s G_t) = 2^n delta_st over the operator basis."""
        stack = np.array([string_matrix(s) for s in operator_basis(n)])
        gram = np.einsum("aij,bji->ab", stack, stack)
        assert np.allclose(gram, 2**n * np.eye(4**n), atol=1e-12)


class TestMultiply:
    """Tests for products of Pauli strings."""

    def test_xy_is_iz(self):
        """Test sigma_x sigma_y = i sigma_z."""
        phase, product = multiply("X", "Y")
        assert phase == 1j
        assert product == PauliString(factors="Z")

    def test_two_site_phases_cancel(self):
        """Test XX * YY = -ZZ."""
        phase, product = multiply("XX", "YY")
        assert phase == -1
        assert product.label == "ZZ"

    @pytest.mark.parametrize("a,b", [("XZ", "YI"), ("ZY", "XX"), ("XYZ", "ZYX")])
    def test_matches_dense_product(self, a, b):
        """Test the symbolic product agrees with matrix multiplication."""
        phase, product = multiply(a, b)
        assert np.allclose(string_matrix(a) @ string_matrix(b), phase * string_matrix(product))

    def test_dimension_mismatch(self):
        """Test strings on different spin counts cannot be multiplied."""
        with pytest.raises(DimensionMismatch):
            multiply("X", "XX")


class TestExpectation:
    """Tests for Tr(rho G)."""

    def test_bell_correlations(self):
        """Test Bell correlations XX = cos phi and XY = sin phi."""
        rho = bell(0.9).projector()
        assert expectation(rho, "XX") == pytest.approx(np.cos(0.9), abs=1e-12)
        assert expectation(rho, "YY") == pytest.approx(-np.cos(0.9), abs=1e-12)
        assert expectation(rho, "XY") == pytest.approx(np.sin(0.9), abs=1e-12)
        assert expectation(rho, "YX") == pytest.approx(np.sin(0.9), abs=1e-12)
        assert expectation(rho, "ZZ") == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        """Test a one-spin matrix with a two-spin observable."""
        with pytest.raises(DimensionMismatch):
            expectation(np.eye(2) / 2, "ZZ")

    def test_non_hermitian_input(self):
        """Test a non-Hermitian matrix gives a complex expectation."""
        m = np.array([[0.5, 1.0], [0.0, 0.5]], dtype=complex)
        with pytest.raises(NonRealExpectation):
            expectation(m, "Y")

    def test_bounded_for_physical_states(self, mixed_state_factory):
        """Test |Tr(rho G)| <= 1 for random states."""
        rho = mixed_state_factory(2)
        assert all(abs(expectation(rho, s)) <= 1 + 1e-12 for s in all_strings(2))


class TestBlochExpansion:
    """Tests for decomposition and composition in the Pauli basis."""

    def test_basis_order(self):
        """Test identity first and lexicographic IXYZ order."""
        labels = [s.label for s in operator_basis(2)]
        assert labels[:5] == ["II", "IX", "IY", "IZ", "XI"]
        assert len(labels) == 16

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_round_trip(self, mixed_state_factory, n):
        """Test compose(decompose(rho)) == rho."""
        for _ in range(100):
            rho = mixed_state_factory(n)
            assert np.allclose(bloch_compose(bloch_decompose(rho)), rho.matrix, atol=1e-12)

    def test_sparse_mapping(self):
        """Test a sparse mapping fills missing strings with zero."""
        matrix = bloch_compose({"Z": 0.5})
        assert np.allclose(matrix, np.diag([0.75, 0.25]))

    def test_identity_coefficient_is_one(self, mixed_state_factory):
        """Test the identity coefficient of the expansion."""
        assert bloch_decompose(mixed_state_factory(1))["I"] == 1.0

    def test_y_matrix(self):
        """Test the Y coefficient of (I + Y)/2."""
        rho = (np.eye(2) + PAULI_Y) / 2
        e = bloch_decompose(rho)
        assert e["Y"] == pytest.approx(1.0)
        assert e["Z"] == pytest.approx(0.0)
        assert np.allclose(bloch_compose(e), (np.eye(2) + PAULI_Y) / 2)

    def test_spin_count(self):
        """Test dimensions that are not powers of two are rejected."""
        assert spin_count(8) == 3
        with pytest.raises(DimensionMismatch):
            spin_count(6)
        assert np.allclose(string_matrix("Z"), PAULI_Z)
