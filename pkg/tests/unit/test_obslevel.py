"""Unit tests for the observation-level registry."""

import numpy as np
import pytest

from spin_maxent.core.obslevel import (
    EXTENSION_CHAINS,
    constraint_set,
    constraints_from_state,
    custom_level,
    extend,
    named_level,
    reduce,
    registered_levels,
    resolve_level,
)
from spin_maxent.core.states import bell, ghz
from spin_maxent.exceptions import DimensionMismatch, DuplicateObservable, NotMember, UnknownLevel


class TestRegistry:
    """Tests for named levels."""

    def test_all_keys_registered(self):
        """Test the registry keys in order."""
        assert registered_levels() == [
            "A1", "B1", "C1", "A2", "B2", "C2", "D2", "E2", "G2", "H2", "B3", "B3x", "B3y", "C3"
        ]

    def test_g2_order(self):
        """Test the G2 observable order used by the closed forms."""
        assert named_level("G2").labels == ["ZZ", "XX", "XY", "YX", "YY"]

    def test_inferred_levels(self):
        """Test C2 and D2 carry the inferred flag."""
        assert named_level("C2").inferred
        assert named_level("D2").inferred
        assert not named_level("B2").inferred

    def test_unknown_level(self):
        """Test unknown keys raise UnknownLevel with the key in the message."""
        with pytest.raises(UnknownLevel) as excinfo:
            named_level("F2")
        assert "F2" in str(excinfo.value)

    @pytest.mark.parametrize("chain", EXTENSION_CHAINS)
    def test_chains_are_nested(self, chain):
        """Test every chain is an increasing sequence of levels."""
        for smaller, larger in zip(chain, chain[1:]):
            assert named_level(smaller).observable_set() < named_level(larger).observable_set()


class TestExtendReduce:
    """Tests for level arithmetic."""

    def test_extend_appends(self):
        """Test B2 + IX has C2's observables."""
        level = extend(named_level("B2"), ["IX"])
        assert level.observable_set() == named_level("C2").observable_set()

    def test_extend_duplicate(self):
        """Test extending with a measured string."""
        with pytest.raises(DuplicateObservable):
            extend(named_level("B2"), ["ZZ"])

    def test_extend_empty_is_identity(self):
        """Test extend with nothing returns the base level."""
        base = named_level("E2")
        assert extend(base, []) is base

    def test_reduce(self):
        """Test G2 - ZZ equals H2."""
        assert reduce(named_level("G2"), ["ZZ"]).observable_set() == named_level("H2").observable_set()

    def test_reduce_not_member(self):
        """Test removing an unmeasured string."""
        with pytest.raises(NotMember):
            reduce(named_level("E2"), ["YY"])

    def test_custom_level_duplicate(self):
        """Test duplicates in a custom level."""
        with pytest.raises(DuplicateObservable):
            custom_level(["ZX", "ZX"])


class TestConstraints:
    """Tests for exact means of states."""

    def test_bell_on_g2(self):
        """Test the G2 means of Bell(phi)."""
        phi = 0.6
        c = constraints_from_state(bell(phi).projector(), named_level("G2"))
        expected = (1.0, np.cos(phi), np.sin(phi), np.sin(phi), -np.cos(phi))
        assert np.allclose(c.means, expected, atol=1e-12)

    def test_ghz_on_c3(self):
        """Test the C3 means of GHZ(0)."""
        c = constraints_from_state(ghz(0.0).projector(), named_level("C3"))
        assert np.allclose(c.means, (1.0, 1.0, 1.0, 0.0), atol=1e-12)

    def test_dimension_mismatch(self):
        """Test a two-spin state on a three-spin level."""
        with pytest.raises(DimensionMismatch):
            constraints_from_state(bell(0.0).projector(), named_level("B3"))

    def test_mean_count_must_match(self):
        """Test ConstraintSet rejects misaligned means."""
        with pytest.raises(ValueError):
            constraint_set(named_level("E2"), [0.1])


class TestResolveLevel:
    """Tests for key-or-file resolution."""

    def test_registry_key(self):
        """Test registry keys resolve directly."""
        assert resolve_level("B3").name == "B3"

    def test_level_file(self, tmp_path):
        """Test a level file with comments and a directive."""
        path = tmp_path / "zx.lvl"
        path.write_text("# custom\nn = 2\nsz(1)*sx(2)\nsx(1)\n", encoding="utf-8")
        level = resolve_level(str(path))
        assert level.name == "zx"
        assert level.labels == ["ZX", "XI"]

    def test_unknown(self):
        """Test neither a key nor a file."""
        with pytest.raises(UnknownLevel):
            resolve_level("no-such-level")
