"""Unit tests for the analytic reconstructions."""

import numpy as np
import pytest

from spin_maxent.config import SolverOptions
from spin_maxent.core.closed_forms import (
    OG_LABELS,
    OH_LABELS,
    ghz_b3_gcdo,
    ghz_c3_gcdo,
    og_entropy,
    og_exponential,
    og_gcdo,
    og_intermediates,
    og_multipliers,
    og_partition,
    oh_gcdo,
    oh_intermediates,
    product_gcdo,
    sinhc,
    single_spin_gcdo,
    try_closed_form,
)
from spin_maxent.core.density import exp_hermitian, max_norm, von_neumann_entropy
from spin_maxent.core.obslevel import constraint_set, constraints_from_state, named_level
from spin_maxent.core.pauli_algebra import string_matrix
from spin_maxent.core.solver import reconstruct, solve_dual
from spin_maxent.core.states import bell, ghz, phase_averaged_ghz
from spin_maxent.exceptions import BlochNormExceeded, MultiplierDomainError, NonPhysicalMeans
from spin_maxent.models.results import Method

LN2 = np.log(2)


def _g2_means(rho):
    return constraints_from_state(rho, named_level("G2")).as_dict()


def _binary(x):
    p = np.array([(1 + x) / 2, (1 - x) / 2])
    return float(-np.sum(p * np.log(p)))


class TestSingleSpin:
    """Tests for single-spin reconstructions."""

    def test_partial_vector(self):
        """Test unmeasured components are zero."""
        r = single_spin_gcdo({"Z": 0.6})
        assert np.allclose(r.rho.matrix, np.diag([0.8, 0.2]))
        assert r.method == Method.CLOSED_FORM.value

    def test_entropy(self):
        """Test S = H((1 + |m|)/2)."""
        r = single_spin_gcdo({"Z": 0.6, "X": 0.0})
        assert r.entropy == pytest.approx(-(0.8 * np.log(0.8) + 0.2 * np.log(0.2)))

    def test_multipliers(self):
        """Test lambda = -atanh(|m|) m/|m| reproduces the state."""
        r = single_spin_gcdo({"Z": 0.3, "X": 0.4})
        lam = dict(zip(r.level.labels, r.multipliers))
        h = lam["Z"] * string_matrix("Z") + lam["X"] * string_matrix("X")
        g = exp_hermitian(-h)
        assert np.allclose(g / np.trace(g), r.rho.matrix, atol=1e-12)

    def test_pure_has_no_multipliers(self):
        """Test |m| = 1 leaves the multipliers undefined."""
        r = single_spin_gcdo({"Z": -1.0, "X": 0.0})
        assert r.multipliers is None
        assert r.entropy == pytest.approx(0.0, abs=1e-12)

    def test_bloch_norm_exceeded(self):
        """Test |m| > 1."""
        with pytest.raises(BlochNormExceeded):
            single_spin_gcdo({"Z": 0.8, "X": 0.8})

    def test_product(self):
        """Test the Kronecker product of two sites."""
        a, b = single_spin_gcdo({"Z": 0.2}), single_spin_gcdo({"Z": -0.4})
        expected = np.kron(a.rho.matrix, b.rho.matrix)
        assert np.allclose(product_gcdo([a, b]), expected)

    def test_uncorrelated_level(self):
        """Test A2 dispatches to the product form."""
        c = constraint_set(named_level("A2"), [0.2, -0.4])
        r = try_closed_form(c)
        assert r is not None
        assert r.predicted["ZZ"] == pytest.approx(-0.08)
        assert r.entropy == pytest.approx(
            single_spin_gcdo({"Z": 0.2}).entropy + single_spin_gcdo({"Z": -0.4}).entropy
        )


class TestG2:
    """Tests for the five-observable closed form."""

    @pytest.mark.parametrize("phi", np.linspace(0, 2 * np.pi, 10, endpoint=False))
    def test_bell_is_recovered(self, phi):
        """Test Bell(phi) is reconstructed exactly with zero entropy."""
        target = bell(phi).projector()
        r = og_gcdo(_g2_means(target))
        assert max_norm(r.rho, target) <= 1e-12
        assert r.entropy <= 1e-8

    def test_eigenvalues_are_m_over_four(self, mixed_state_factory):
        """Test the spectrum equals M/4."""
        xi = _g2_means(mixed_state_factory(2))
        r = og_gcdo(xi)
        expected = np.sort(og_intermediates(xi).M) / 4
        assert np.allclose(np.sort(r.rho.eigenvalues()), expected, atol=1e-12)
        assert sum(og_intermediates(xi).M) == pytest.approx(4.0, abs=1e-14)

    def test_entropy_formula(self, mixed_state_factory):
        """Test the M entropy equals the reported entropy."""
        xi = _g2_means(mixed_state_factory(2))
        assert og_entropy(xi) == pytest.approx(og_gcdo(xi).entropy, abs=1e-12)

    def test_multipliers_match_dual(self, mixed_state_factory):
        """Test analytic multipliers agree with the Newton solver."""
        rho = mixed_state_factory(2)
        c = constraints_from_state(rho, named_level("G2"))
        analytic = og_multipliers(c.as_dict())
        numeric = solve_dual(c, SolverOptions(disable_closed_forms=True)).multipliers
        assert np.allclose(analytic, numeric, atol=1e-6)

    def test_exponential_matches_expm(self):
        """Test the block exponential against the dense exponential."""
        lam = (0.3, -0.2, 0.5, 0.1, 0.7)
        h = sum(v * string_matrix(label) for v, label in zip(lam, OG_LABELS))
        matrix, partition = og_exponential(lam)
        dense = exp_hermitian(-h)
        assert np.allclose(matrix, dense, atol=1e-12)
        assert partition == pytest.approx(np.trace(dense).real)

    def test_exponential_small_arguments(self):
        """Test the series branch at |b| = |d| = 0."""
        matrix, partition = og_exponential((0.0, 0.0, 0.0, 0.0, 0.0))
        assert np.allclose(matrix, np.eye(4))
        assert partition == pytest.approx(4.0)

    def test_partition_from_means(self, mixed_state_factory):
        """Test Z = 4/(M1 M2 M3 M4)^(1/4) agrees with the exponential."""
        xi = _g2_means(mixed_state_factory(2))
        _, partition = og_exponential(og_multipliers(xi))
        assert og_partition(xi) == pytest.approx(partition, rel=1e-10)

    def test_boundary_has_no_multipliers(self):
        """Test pure means raise MultiplierDomainError."""
        with pytest.raises(MultiplierDomainError):
            og_multipliers((1.0, 1.0, 0.0, 0.0, -1.0))

    def test_non_physical(self):
        """Test means with a negative M."""
        with pytest.raises(NonPhysicalMeans):
            og_gcdo((1.0, 1.0, 0.0, 0.0, 1.0))

    def test_sinhc(self):
        """Test sinh(x)/x on both branches."""
        assert sinhc(0.0) == 1.0
        assert sinhc(2.0) == pytest.approx(np.sinh(2.0) / 2.0)


class TestH2:
    """Tests for the four-observable closed form."""

    def test_bell_predicts_zz_one(self):
        """Test t = 1 for every Bell state."""
        for phi in (0.3, 1.1, 2.5):
            h = constraints_from_state(bell(phi).projector(), named_level("H2")).as_dict()
            assert oh_intermediates(h).t == pytest.approx(1.0, abs=1e-12)

    def test_equals_g2_at_predicted_zz(self, mixed_state_factory):
        """Test the H2 form is the G2 form with zz replaced by t."""
        rho = mixed_state_factory(2)
        h = constraints_from_state(rho, named_level("H2")).as_dict()
        t = oh_intermediates(h).t
        g = og_gcdo((t,) + tuple(h[label] for label in OH_LABELS))
        assert max_norm(oh_gcdo(h).rho, g.rho) <= 1e-12
        assert oh_gcdo(h).entropy == pytest.approx(g.entropy, abs=1e-12)

    def test_predicted_zz_is_stationary(self, mixed_state_factory):
        """Test dS/dzz = 0 at t."""
        h = constraints_from_state(mixed_state_factory(2), named_level("H2")).as_dict()
        rest = tuple(h[label] for label in OH_LABELS)
        t, step = oh_intermediates(h).t, 1e-6
        slope = (og_entropy((t + step,) + rest) - og_entropy((t - step,) + rest)) / (2 * step)
        assert abs(slope) <= 1e-6

    def test_reconstructs_bell(self):
        """Test H2 alone recovers Bell(phi)."""
        target = bell(0.8).projector()
        c = constraints_from_state(target, named_level("H2"))
        assert max_norm(try_closed_form(c).rho, target) <= 1e-12

    @pytest.mark.parametrize("phi", np.linspace(0, 2 * np.pi, 41))
    def test_bell_grid(self, phi):
        """Test pure H2 means reconstruct through the closed form at every phase."""
        target = bell(phi).projector()
        r = reconstruct(constraints_from_state(target, named_level("H2")))
        assert r.method == Method.CLOSED_FORM.value
        assert max_norm(r.rho, target) <= 1e-10
        assert r.entropy <= 1e-8


class TestThreeSpin:
    """Tests for the B3 and C3 closed forms."""

    def test_b3_ghz_mixture(self):
        """Test GHZ means on B3 give the phase-averaged mixture."""
        r = ghz_b3_gcdo(1.0, 1.0)
        assert max_norm(r.rho, phase_averaged_ghz()) <= 1e-12
        assert r.entropy == pytest.approx(LN2, abs=1e-12)

    def test_b3_entropy(self):
        """Test S = ln 2 + H(xi12) + H(xi23)."""
        r = ghz_b3_gcdo(0.4, -0.2)
        assert r.entropy == pytest.approx(von_neumann_entropy(r.rho), abs=1e-12)
        assert r.entropy == pytest.approx(LN2 + _binary(0.4) + _binary(-0.2), abs=1e-12)
        assert r.predicted["ZIZ"] == pytest.approx(-0.08)

    @pytest.mark.parametrize("phi", [0.0, 0.7, 2.0, 4.4])
    def test_c3_recovers_ghz(self, phi):
        """Test GHZ means on C3 give the pure state."""
        target = ghz(phi).projector()
        r = ghz_c3_gcdo(1.0, 1.0, np.cos(phi), -np.sin(phi))
        assert max_norm(r.rho, target) <= 1e-12
        assert r.entropy <= 1e-8

    def test_c3_expansion_terms(self):
        """Test the product has eleven non-identity terms for generic means."""
        r = ghz_c3_gcdo(0.5, 0.3, 0.2, 0.1)
        assert len(r.predicted.nonzero(1e-12)) == 11

    def test_c3_multipliers(self):
        """Test interior multipliers reproduce the state."""
        r = ghz_c3_gcdo(0.5, 0.3, 0.2, 0.1)
        h = sum(v * string_matrix(label) for v, label in zip(r.multipliers, r.level.labels))
        g = exp_hermitian(-h)
        assert np.allclose(g / np.trace(g), r.rho.matrix, atol=1e-12)

    def test_c3_non_physical(self):
        """Test |zeta| > 1."""
        with pytest.raises(NonPhysicalMeans):
            ghz_c3_gcdo(1.0, 1.0, 0.9, 0.9)

    def test_unmatched_level(self):
        """Test levels without a closed form return None."""
        c = constraint_set(named_level("B3x"), [0.0, 0.0])
        assert try_closed_form(c) is None
