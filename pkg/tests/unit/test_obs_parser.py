"""Unit tests for the observable expression grammar."""

import pytest

from spin_maxent.exceptions import (
    DuplicateObservable,
    DuplicateSite,
    ObservableSyntaxError,
    SiteOutOfRange,
)
from spin_maxent.utils.obs_parser import (
    format_observable,
    parse_expression,
    parse_level_text,
    parse_observable,
    tokenize,
)


class TestParseObservable:
    """Tests for single expressions."""

    def test_product(self):
        """Test a two-factor product."""
        assert parse_observable("sx(1)*sy(2)", 2).label == "XY"

    def test_unmentioned_sites_are_identity(self):
        """Test sites left out of the product."""
        assert parse_observable("sz(2)", 3).label == "IZI"

    def test_case_and_whitespace(self):
        """Test operator names are case-insensitive and spaces are ignored."""
        assert parse_observable(" SZ( 1 ) * Sx(3) ", 3).label == "ZIX"

    def test_identity(self):
        """Test the 'id' keyword."""
        assert parse_observable("id", 2).is_identity

    def test_site_out_of_range(self):
        """Test a site beyond n."""
        with pytest.raises(SiteOutOfRange):
            parse_observable("sx(3)", 2)

    def test_duplicate_site(self):
        """Test the same site twice."""
        with pytest.raises(DuplicateSite):
            parse_observable("sx(1)*sz(1)", 2)

    def test_unknown_operator_position(self):
        """Test the error carries the byte offset of the bad token."""
        with pytest.raises(ObservableSyntaxError) as excinfo:
            parse_observable("sx(1)*sw(2)", 2)
        assert excinfo.value.position == 6

    def test_missing_paren(self):
        """Test an unterminated factor."""
        with pytest.raises(ObservableSyntaxError):
            parse_observable("sx(1", 1)

    def test_trailing_star(self):
        """Test a dangling product operator."""
        with pytest.raises(ObservableSyntaxError):
            parse_observable("sx(1)*", 1)

    def test_byte_offsets(self):
        """Test positions count UTF-8 bytes."""
        with pytest.raises(ObservableSyntaxError) as excinfo:
            parse_observable("é", 1)
        assert excinfo.value.position == 0
        tokens = tokenize("sx(1)")
        assert [t.kind for t in tokens] == ["name", "(", "int", ")", "end"]

    def test_expression_keeps_source(self):
        """Test ObservableExpr holds the text and the parsed string."""
        expr = parse_expression("sz(1)*sz(2)", 2)
        assert expr.source == "sz(1)*sz(2)"
        assert expr.parsed.label == "ZZ"


class TestFormatObservable:
    """Tests for canonical formatting."""

    def test_format(self):
        """Test ascending sites without spaces."""
        assert format_observable("ZIX") == "sz(1)*sx(3)"

    def test_identity(self):
        """Test the identity prints as 'id'."""
        assert format_observable("II") == "id"

    @pytest.mark.parametrize("label", ["XYZ", "IIZ", "YI", "X"])
    def test_parse_inverts_format(self, label):
        """Test parsing the formatted text gives the same string."""
        assert parse_observable(format_observable(label), len(label)).label == label


class TestParseLevelText:
    """Tests for level files."""

    def test_infers_spin_count(self):
        """Test n is the largest site without a directive."""
        level = parse_level_text("sz(1)*sz(2)\nsx(3)\n")
        assert level.n == 3
        assert level.labels == ["ZZI", "IIX"]

    def test_directive_widens(self):
        """Test the directive fixes n above the largest site."""
        assert parse_level_text("n = 3\nsz(1)\n").labels == ["ZII"]

    def test_comments_and_blank_lines(self):
        """Test comments and blank lines are skipped."""
        level = parse_level_text("# header\n\nsx(1)  # x\n", n=1)
        assert level.labels == ["X"]

    def test_identity_rejected(self):
        """Test the identity cannot be measured."""
        with pytest.raises(ObservableSyntaxError):
            parse_level_text("id\n", n=2)

    def test_duplicates_rejected(self):
        """Test the same string twice."""
        with pytest.raises(DuplicateObservable):
            parse_level_text("sz(1)\nSZ(1)\n", n=1)

    def test_directive_conflict(self):
        """Test a directive that disagrees with the requested n."""
        with pytest.raises(ValueError):
            parse_level_text("n = 2\nsz(1)\n", n=3)
