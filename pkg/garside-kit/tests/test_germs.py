"""
test_germs.py

Unit tests for germs.py.
"""

import pytest


NOT_A_GERM = ",1,a,b\n1,1,a,b\na,a,b,1\nb,b,a,\n"


@pytest.fixture
def braid_germ():
    """The six divisors of a b a with their defined products."""
    from fixtures import load_fixture

    return load_fixture("braid3-germ")


class TestParseGerm:
    """Tests for parse_germ function."""

    def test_parse(self, braid_germ):
        """Test carrier, identity and partial products."""
        assert braid_germ.carrier == ("1", "a", "b", "ab", "ba", "aba")
        assert braid_germ.compose("a", "ba") == "aba"
        assert braid_germ.compose("a", "a") is None
        assert braid_germ.non_identity[0] == "a"

    def test_csv_round_trip(self, braid_germ):
        """Test that writing and reading back keeps the products."""
        from garside.germs import parse_germ

        assert parse_germ(braid_germ.to_csv()).product == braid_germ.product

    @pytest.mark.parametrize(
        "text",
        [
            "",
            ",a,b\na,a,b\n",
            ",1,a,a\n1,1,a,a\n",
            ",1,a\n1,1,a\na,a,z\n",
            ",1,a\n1,1,a\nz,z,\n",
        ],
    )
    def test_malformed(self, text):
        """Test missing identity, duplicate labels, unknown cells and rows."""
        from garside.errors import MalformedTable
        from garside.germs import parse_germ

        with pytest.raises(MalformedTable):
            parse_germ(text)


class TestValidateGerm:
    """Tests for validate_germ function."""

    def test_braid_germ(self, braid_germ):
        """Test the flags of the divisor germ."""
        from garside.germs import validate_germ

        flags = validate_germ(braid_germ)

        assert flags.is_germ
        assert flags.left_cancellative
        assert flags.noetherian
        assert flags.to_dict()["reasons"] == []

    def test_not_a_germ(self):
        """Test a table where (a.a).b and a.(a.b) disagree."""
        from garside.germs import parse_germ, validate_germ

        flags = validate_germ(parse_germ(NOT_A_GERM))

        assert not flags.is_germ
        assert any("disagree" in reason for reason in flags.reasons)

    def test_invertibles(self):
        """Test that e is invertible in the central germ."""
        from fixtures import load_fixture
        from garside.germs import germ_invertibles

        assert germ_invertibles(load_fixture("central-germ")) == ["1", "e"]


class TestMonFromGerm:
    """Tests for mon_from_germ, germ_backend and embedding_test functions."""

    def test_relations(self):
        """Test one relation per defined non-identity product."""
        from fixtures import load_fixture
        from garside.germs import mon_from_germ

        p = mon_from_germ(load_fixture("absorb-germ"))

        assert p.generator_names == ("a", "e")
        assert [str(r) for r in p.relations] == ["e a = a", "e e = 1"]

    def test_embeds(self):
        """Test that the absorbing germ embeds in its monoid."""
        from fixtures import load_fixture
        from garside.germs import embedding_test

        verdict = embedding_test(load_fixture("absorb-germ"))

        assert verdict.embeds
        assert verdict.exact

    def test_does_not_embed(self):
        """Test the two elements that collapse in the monoid."""
        from fixtures import load_fixture
        from garside.germs import embedding_test

        verdict = embedding_test(load_fixture("nonembed"))

        assert not verdict
        assert verdict.witness == ("i", "n")
        assert verdict.to_dict()["witness"] == ["i", "n"]


class TestLocalDivisibility:
    """Tests for local_divides, j_family, i_family and normality_via_j functions."""

    def test_local_divides(self, braid_germ):
        """Test a | aba and b not dividing ab."""
        from garside.germs import local_divides

        assert local_divides(braid_germ, "a", "aba")
        assert not local_divides(braid_germ, "b", "ab")

    def test_families(self, braid_germ):
        """Test the J- and I-families of (a, b)."""
        from garside.germs import i_family, j_family

        assert j_family(braid_germ, "a", "b") == ["1", "b"]
        assert i_family(braid_germ, "a", "b") == ["a", "ab"]

    def test_normality(self, braid_germ):
        """Test that (ab, b) is normal and (a, b) is not."""
        from garside.germs import normality_via_j

        assert normality_via_j(braid_germ, "ab", "b")
        assert not normality_via_j(braid_germ, "a", "b")


class TestSubgerms:
    """Tests for subgerm_closure, right_quotient_closed and eqir closure."""

    def test_closure(self, braid_germ):
        """Test that {a, ba} closes to {1, a, ba, aba}."""
        from garside.germs import subgerm_closure

        sub = subgerm_closure(braid_germ, ["a", "ba"])

        assert sub.carrier == ("1", "a", "ba", "aba")
        assert sub.compose("a", "ba") == "aba"

    def test_right_quotient_witness(self, braid_germ):
        """Test that ba and ba.b lie in the subgerm while b does not."""
        from garside.germs import right_quotient_closed

        closed, witness = right_quotient_closed(braid_germ, ["1", "a", "ba", "aba"])

        assert not closed
        assert witness == ("ba", "b", "aba")
        assert right_quotient_closed(braid_germ, braid_germ.carrier) == (True, None)

    def test_eqir_closed(self):
        """Test closure under right-multiplication by e."""
        from fixtures import load_fixture
        from garside.germs import germ_eqir_closed, submonoid_eqir_closed

        t = load_fixture("central-germ")

        assert not germ_eqir_closed(t, ["1", "a"])
        assert germ_eqir_closed(t, ["a", "ae"])
        assert submonoid_eqir_closed(t, ["1", "e"])


class TestDivisorGerm:
    """Tests for divisor_germ function."""

    def test_matches_table(self, braid3_backend, braid_germ):
        """Test that the divisors of a b a rebuild the stored germ."""
        from garside.germs import divisor_germ

        t = divisor_germ(braid3_backend, ("a", "b", "a"))

        assert t.carrier == braid_germ.carrier
        assert t.product == braid_germ.product
        assert t.name == "Div(aba)"
