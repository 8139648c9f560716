"""
test_presentation.py

Unit tests for presentation.py (parsing, serialization, signed words, classification).
"""

import pytest


BRAID3 = """
# braid monoid on three strands
gens: a, b
rels: a b a = b a b
"""


class TestParsePresentation:
    """Tests for parse_presentation function."""

    def test_parse_braid(self):
        """Test parsing a one-relation monoid presentation."""
        from garside.presentation import parse_presentation

        p = parse_presentation(BRAID3, name="braid3")

        assert p.generator_names == ("a", "b")
        assert len(p.relations) == 1
        assert str(p.relations[0]) == "a b a = b a b"
        assert p.is_monoid

    def test_parse_chain_gives_every_pair(self):
        """Test that "w1 = w2 = w3" relates every pair of sides."""
        from garside.presentation import parse_presentation

        p = parse_presentation("gens: a, b, c, d\nrels: a b = b c = c d")

        assert [str(r) for r in p.relations] == ["a b = b c", "a b = c d", "b c = c d"]

    def test_parse_relations_on_following_lines(self):
        """Test relations listed under an empty rels: line, with ';' separators."""
        from garside.presentation import parse_presentation

        p = parse_presentation("gens: a, b, c\nrels:\n  a b = b a; b c = c b\n  a c = c a\n")

        assert len(p.relations) == 3

    def test_parse_empty_word(self):
        """Test that 1 stands for the empty word and makes letters invertible."""
        from garside.presentation import parse_presentation

        p = parse_presentation("gens: a, e\nrels: e a = a; e e = 1")

        assert p.relations[1].rhs == ()
        assert p.invertible_names == frozenset({"e"})
        assert p.has_invertibles

    def test_parse_declared_invertible(self):
        """Test the invertible: line."""
        from garside.presentation import parse_presentation

        p = parse_presentation("gens: a, e\ninvertible: e\nrels: e a = a e")

        assert p.by_name["e"].declared_invertible
        assert "e" in p.invertible_names

    def test_parse_primes_and_unicode_prime(self):
        """Test generator names with primes, including the typographic prime."""
        from garside.presentation import parse_presentation

        p = parse_presentation("gens: a, a′\nrels: a a′ = a′ a")

        assert p.generator_names == ("a", "a'")

    def test_parse_category(self):
        """Test objects with typed generators."""
        from garside.presentation import parse_presentation

        p = parse_presentation("objects: x, y\ngens: f: x -> y, g: y -> x\nrels: f g f = f")

        assert not p.is_monoid
        assert p.by_name["f"].source == "x"
        assert p.by_name["g"].target == "x"

    def test_parse_undeclared_generator_reports_position(self):
        """Test that an unknown letter is reported with line and column."""
        from garside.errors import UndeclaredGenerator
        from garside.presentation import parse_presentation

        with pytest.raises(UndeclaredGenerator) as excinfo:
            parse_presentation("gens: a\nrels:\n  a b = a")

        assert excinfo.value.line == 3
        assert excinfo.value.column == 5
        assert excinfo.value.exit_code == 2

    def test_parse_duplicate_generator(self):
        """Test that a generator declared twice is rejected."""
        from garside.errors import PresentationSyntaxError
        from garside.presentation import parse_presentation

        with pytest.raises(PresentationSyntaxError, match="duplicate generator"):
            parse_presentation("gens: a, a\nrels: a = a")

    def test_parse_line_outside_rels(self):
        """Test that a relation before rels: is a syntax error."""
        from garside.errors import PresentationSyntaxError
        from garside.presentation import parse_presentation

        with pytest.raises(PresentationSyntaxError) as excinfo:
            parse_presentation("a b = b a\ngens: a, b")

        assert excinfo.value.line == 1

    def test_parse_rejects_bad_relations(self):
        """Test empty sides, inverse letters, 1 = 1 and a missing '='."""
        from garside.errors import PresentationSyntaxError
        from garside.presentation import parse_presentation

        for rels in ("a b =", "a^-1 b = b", "1 = 1", "a b"):
            with pytest.raises(PresentationSyntaxError):
                parse_presentation(f"gens: a, b\nrels: {rels}")

    def test_parse_source_target_mismatch(self):
        """Test that both sides of a relation must run between the same objects."""
        from garside.errors import SourceTargetMismatch
        from garside.presentation import parse_presentation

        with pytest.raises(SourceTargetMismatch):
            parse_presentation("objects: x, y\ngens: f: x -> y, g: y -> x\nrels: f = g")

    def test_parse_invalid_name(self):
        """Test that generator names follow the identifier pattern."""
        from garside.errors import PresentationSyntaxError
        from garside.presentation import parse_presentation

        with pytest.raises(PresentationSyntaxError):
            parse_presentation("gens: a-b\nrels: a-b = a-b")


class TestSerializePresentation:
    """Tests for serialize_presentation function."""

    def test_serialize_round_trip(self):
        """Test that parsing the serialized text gives an equal presentation."""
        from garside.presentation import parse_presentation

        for text in (
            BRAID3,
            "gens: a, e\nrels: e a = a; e e = 1",
            "objects: x, y\ngens: f: x -> y, g: y -> x\nrels: f g f = f",
            "gens: a, e\ninvertible: e\nrels: e a = a e",
        ):
            p = parse_presentation(text)
            assert parse_presentation(p.serialize()) == p

    def test_serialize_format(self):
        """Test the canonical text layout."""
        from garside.presentation import parse_presentation

        p = parse_presentation(BRAID3)

        assert p.serialize() == "gens: a, b\nrels:\na b a = b a b\n"


class TestBuildPresentation:
    """Tests for build_presentation function."""

    def test_build_matches_parse(self):
        """Test that building from Python data equals parsing the same text."""
        from garside.presentation import build_presentation, parse_presentation

        built = build_presentation(["a", "b"], [(("a", "b", "a"), ("b", "a", "b"))])

        assert built == parse_presentation(BRAID3)

    def test_build_undeclared(self):
        """Test that relations may only use declared generators."""
        from garside.errors import UndeclaredGenerator
        from garside.presentation import build_presentation

        with pytest.raises(UndeclaredGenerator):
            build_presentation(["a"], [(("a",), ("b",))])


class TestSignedWords:
    """Tests for signed word parsing and free reduction."""

    def test_signed_word_str(self, braid3):
        """Test both inverse notations and the printed form."""
        assert str(braid3.signed("a^-1 b")) == "a^-1 b"
        assert str(braid3.signed("a⁻¹ b")) == "a^-1 b"
        assert str(braid3.signed("1")) == "1"

    def test_signed_word_inverse(self, braid3):
        """Test inversion reverses the letters and flips signs."""
        assert str(braid3.signed("a^-1 b").inverse()) == "b^-1 a"

    def test_signed_word_signs(self, braid3):
        """Test is_positive and is_negative."""
        assert braid3.signed("a b").is_positive
        assert braid3.signed("a^-1 b^-1").is_negative
        mixed = braid3.signed("a^-1 b")
        assert not mixed.is_positive
        assert not mixed.is_negative

    def test_parse_word_rejects_negative(self, braid3):
        """Test that positive-word parsing refuses inverse letters."""
        from garside.errors import PresentationSyntaxError

        assert braid3.word("a b") == ("a", "b")
        with pytest.raises(PresentationSyntaxError):
            braid3.word("a^-1")

    def test_signed_word_undeclared(self, braid3):
        """Test unknown letters in a signed word."""
        from garside.errors import UndeclaredGenerator

        with pytest.raises(UndeclaredGenerator):
            braid3.signed("a c")

    def test_free_reduce(self, braid3):
        """Test cancelling adjacent inverse pairs."""
        from garside.presentation import free_reduce

        assert str(free_reduce(braid3.signed("a a^-1 b"))) == "b"
        assert str(free_reduce(braid3.signed("b a^-1 a b^-1"))) == "1"


class TestClassify:
    """Tests for classify function and derived flags."""

    def test_classify_braid(self, braid3):
        """Test the flags of the braid presentation."""
        flags = braid3.classification

        assert flags.complemented
        assert flags.homogeneous
        assert not flags.triangular
        assert not flags.length_reducing_confluent

    def test_classify_two_relations_same_head(self, twomcm):
        """Test that two relations starting with a and b break complementation."""
        assert not twomcm.classification.complemented
        assert twomcm.classification.homogeneous

    def test_classify_absorbing(self, absorb):
        """Test the flags of <a, e | e a = a, e e = 1>."""
        flags = absorb.classification.to_dict()

        assert flags["homogeneous"] is False
        assert flags["lengthReducingConfluent"] is True
        assert flags["complemented"] is False

    def test_noetherian_certificate(self, braid3, absorb):
        """Test the height certificate with and without invertible letters."""
        assert braid3.noetherian_certified
        assert absorb.noetherian_certified

    def test_mirror(self, twomcm):
        """Test that mirroring reverses both sides of every relation."""
        mirrored = [str(r) for r in twomcm.mirror().relations]

        assert "a' a = b' b" in mirrored
        assert "b a = a b" in mirrored
