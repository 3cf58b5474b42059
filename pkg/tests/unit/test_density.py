"""Unit tests for density-matrix validation and entropy functionals."""

import numpy as np
import pytest
from scipy.linalg import expm
from scipy.stats import unitary_group

from spin_maxent.core.density import (
    entropy_from_eigenvalues,
    entropy_report,
    exp_hermitian,
    fidelity,
    is_physical,
    linear_entropy,
    max_norm,
    trace_distance,
    validate,
    von_neumann_entropy,
)
from spin_maxent.core.pauli_algebra import string_matrix
from spin_maxent.core.states import bell, maximally_mixed
from spin_maxent.exceptions import NegativeEigenvalue, NotHermitian, TraceNotOne


class TestValidate:
    """Tests for validate."""

    def test_accepts_mixed_state(self, mixed_state_factory):
        """Test a random state passes unchanged."""
        rho = mixed_state_factory(2)
        assert np.allclose(validate(rho.matrix).matrix, rho.matrix)

    def test_not_hermitian(self):
        """Test a non-Hermitian matrix is rejected."""
        with pytest.raises(NotHermitian):
            validate(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_trace_not_one(self):
        """Test an unnormalized matrix is rejected."""
        with pytest.raises(TraceNotOne):
            validate(np.eye(2))

    def test_negative_eigenvalue(self):
        """Test a clearly negative eigenvalue is rejected and reported."""
        with pytest.raises(NegativeEigenvalue) as excinfo:
            validate(np.diag([1.2, -0.2]))
        assert excinfo.value.min_eigenvalue == pytest.approx(-0.2)

    def test_clamps_tiny_negative_eigenvalue(self):
        """Test eigenvalues within the tolerance are clamped to zero."""
        rho = validate(np.diag([1.0 + 1e-12, -1e-12]))
        assert np.min(np.linalg.eigvalsh(rho.matrix)) >= 0.0
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-15)

    def test_input_not_mutated(self):
        """Test validate leaves the caller's array untouched."""
        m = np.diag([1.0 + 1e-12, -1e-12]).astype(complex)
        original = m.copy()
        validate(m)
        assert np.array_equal(m, original)

    def test_is_physical(self):
        """Test the boolean form."""
        assert is_physical(np.eye(4) / 4)
        assert not is_physical(np.diag([1.5, -0.5]))


class TestEntropy:
    """Tests for entropy functionals."""

    def test_maximally_mixed(self):
        """Test S(I/d) = n ln 2."""
        assert von_neumann_entropy(maximally_mixed(3)) == pytest.approx(3 * np.log(2))

    def test_pure_state(self):
        """Test a pure state has zero entropy."""
        assert von_neumann_entropy(bell(0.3).projector()) == pytest.approx(0.0, abs=1e-12)

    def test_zero_eigenvalues(self):
        """Test 0 ln 0 = 0."""
        assert entropy_from_eigenvalues([1.0, 0.0, 0.0]) == 0.0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_unitary_invariance(self, mixed_state_factory, rng, n):
        """Test S(U rho U^dagger) = S(rho) for random unitaries."""
        for _ in range(10):
            rho = mixed_state_factory(n).matrix
            u = unitary_group.rvs(2**n, random_state=rng)
            rotated = u @ rho @ u.conj().T
            assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-10)

    def test_linear_entropy(self):
        """Test 1 - Tr(rho^2) for I/2."""
        assert linear_entropy(np.eye(2) / 2) == pytest.approx(0.5)

    def test_report(self, mixed_state_factory):
        """Test the report agrees with the individual functionals."""
        rho = mixed_state_factory(2)
        report = entropy_report(rho)
        assert report.von_neumann == pytest.approx(von_neumann_entropy(rho))
        assert report.linear == pytest.approx(linear_entropy(rho))
        assert report.eigenvalues == sorted(report.eigenvalues)
        assert sum(report.eigenvalues) == pytest.approx(1.0)


class TestMatrixFunctions:
    """Tests for Hermitian exponentials and distances."""

    def test_exp_hermitian_matches_expm(self):
        """Test the eigendecomposition exponential against scipy."""
        h = 0.3 * string_matrix("XY") - 1.1 * string_matrix("ZZ") + 0.2 * string_matrix("IX")
        assert np.allclose(exp_hermitian(h), expm(h), atol=1e-12)

    def test_exp_hermitian_rejects_non_hermitian(self):
        """Test non-Hermitian input."""
        with pytest.raises(NotHermitian):
            exp_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_exp_hermitian_commutes(self):
        """Test exp(h) commutes with h."""
        h = 0.4 * string_matrix("XZ") + 0.7 * string_matrix("YY") - 0.2 * string_matrix("ZI")
        e = exp_hermitian(h)
        assert np.allclose(e @ h, h @ e, atol=1e-12)

    def test_exp_hermitian_factorizes_commuting_terms(self):
        """Test exp(h1 + h2) = exp(h1) exp(h2) when h1 and h2 commute."""
        h1 = 0.8 * string_matrix("ZI") - 0.3 * string_matrix("XX")
        h2 = 0.5 * string_matrix("IZ") + 0.6 * string_matrix("YY")
        assert np.allclose(h1 @ h2, h2 @ h1)
        assert np.allclose(exp_hermitian(h1 + h2), exp_hermitian(h1) @ exp_hermitian(h2), atol=1e-12)

    def test_fidelity_identical(self, mixed_state_factory):
        """Test F(rho, rho) = 1."""
        rho = mixed_state_factory(2)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)

    def test_fidelity_orthogonal(self):
        """Test orthogonal pure states have zero fidelity."""
        assert fidelity(bell(0.0).projector(), bell(np.pi).projector()) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_trace_distance(self):
        """Test orthogonal pure states are at distance one."""
        assert trace_distance(bell(0.0).projector(), bell(np.pi).projector()) == pytest.approx(1.0)

    def test_max_norm(self):
        """Test elementwise max modulus."""
        assert max_norm(np.eye(2), np.zeros((2, 2))) == 1.0
