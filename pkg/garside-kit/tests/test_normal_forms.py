"""
test_normal_forms.py

Unit tests for normal_forms.py (greedy pairs, heads, normal decompositions,
powers, symmetric decompositions and canonical length).
"""

import pytest


class TestFamily:
    """Tests for Family class."""

    def test_from_text_dedupes_classes(self, braid3_backend):
        """Test that equal words give one member."""
        from garside.normal_forms import Family

        S = Family.from_text(braid3_backend, "a b a; b a b; 1")

        assert len(S) == 2
        assert ("b", "a", "b") in S
        assert S.to_dict() == ["1", "a b a"]

    def test_sharp_adds_invertibles(self, absorb_backend):
        """Test S# = S.C* u C* with C* = {1, e}."""
        from garside.normal_forms import Family

        S = Family.from_text(absorb_backend, "a")

        assert S.to_dict() == ["a"]
        assert S.sharp.to_dict() == ["1", "a", "a e", "e"]
        assert S.in_sharp(("a", "e"))


class TestGreedyAndHead:
    """Tests for is_greedy_pair and head functions."""

    def test_greedy_pairs(self, braid_divisors):
        """Test greedy and non-greedy pairs for the divisors of a b a."""
        from garside.normal_forms import is_greedy_pair

        assert is_greedy_pair(braid_divisors, ("a", "b"), ("b",))
        assert is_greedy_pair(braid_divisors, ("a", "b", "a"), ("a", "b", "a"))
        assert is_greedy_pair(braid_divisors, ("a",), ("a",))
        assert not is_greedy_pair(braid_divisors, ("a",), ("b",))
        assert is_greedy_pair(braid_divisors, ("a",), ())

    def test_head(self, braid_divisors):
        """Test that the head is the largest family divisor."""
        from garside.normal_forms import head

        assert str(head(braid_divisors, ("a", "b", "a", "a", "b", "a"))) == "a b a"
        assert str(head(braid_divisors, ("a", "b", "b"))) == "a b"
        assert str(head(braid_divisors, ("b", "b"))) == "b"

    def test_no_head(self, braid3_backend):
        """Test that {a, b} gives a b no head."""
        from garside.errors import NoHead
        from garside.normal_forms import Family, head

        S = Family.from_text(braid3_backend, "a; b")

        with pytest.raises(NoHead):
            head(S, ("a", "b", "a"))

    def test_no_head_names_the_lcm(self, braid3_backend):
        """Test that NoHead reports the lcm that leaves the family."""
        from garside.errors import NoHead
        from garside.normal_forms import Family, head

        S = Family.from_text(braid3_backend, "a; b")

        with pytest.raises(NoHead, match="lcm a b a of"):
            head(S, ("a", "b", "a", "b"))

    def test_head_without_global_lcm(self, twomcm_backend):
        """Test that a and b, with two right-mcms, are joined by the one dividing g."""
        from garside.errors import NoHead
        from garside.normal_forms import Family, head

        small = Family.from_text(twomcm_backend, "a; b")
        with pytest.raises(NoHead, match="lcm a b of"):
            head(small, ("b", "a"))

        S = Family.from_text(twomcm_backend, "a; b; a b; a a'")
        assert str(head(S, ("a", "a", "b'", "a'", "a'"))) == "a b"


class TestNormalDecomposition:
    """Tests for normal_decomposition and left_multiply_normal functions."""

    def test_delta_squared(self, braid_divisors):
        """Test the decomposition of a b a a b a."""
        from garside.normal_forms import normal_decomposition

        path = normal_decomposition(braid_divisors, ("a", "b", "a", "a", "b", "a"))

        assert str(path) == "(a b a, a b a)"
        assert path.strict
        assert path.product() == braid_divisors.backend.parse("b a b b a b")

    def test_two_entries(self, braid_divisors):
        """Test a b b = (a b).(b)."""
        from garside.normal_forms import normal_decomposition

        path = normal_decomposition(braid_divisors, ("a", "b", "b"))

        assert str(path) == "(a b, b)"
        assert path.to_dict() == {"entries": ["a b", "b"], "strict": True}

    def test_identity(self, braid_divisors):
        """Test the empty decomposition of the identity."""
        from garside.normal_forms import normal_decomposition

        path = normal_decomposition(braid_divisors, ())

        assert len(path) == 0
        assert path.invertible is None
        assert str(path) == "()"

    def test_invertible_input(self, absorb_backend):
        """Test that an invertible element gives the empty path carrying it."""
        from garside.normal_forms import Family, normal_decomposition

        S = Family.from_text(absorb_backend, "1; a; e")
        path = normal_decomposition(S, ("e",))

        assert len(path) == 0
        assert str(path.invertible) == "e"
        assert path.to_dict()["invertible"] == "e"

    def test_left_multiply(self, braid_divisors):
        """Test renormalizing after multiplying on the left."""
        from garside.normal_forms import left_multiply_normal, normal_decomposition

        path = normal_decomposition(braid_divisors, ("a", "b", "b"))
        result = left_multiply_normal(braid_divisors, ("b",), path)

        assert str(result) == "(a b a, b)"
        assert str(result) == str(normal_decomposition(braid_divisors, ("b", "a", "b", "b")))

    def test_left_multiply_absorbs(self, braid_divisors):
        """Test a . (b a) = (a b a)."""
        from garside.normal_forms import left_multiply_normal, normal_decomposition

        path = normal_decomposition(braid_divisors, ("b", "a"))

        assert str(left_multiply_normal(braid_divisors, ("a",), path)) == "(a b a)"


class TestPowers:
    """Tests for power_family, group_power and power_normal functions."""

    def test_group_and_expand(self, braid_divisors):
        """Test that grouping by two and expanding gives the same path back."""
        from garside.normal_forms import (
            group_power,
            normal_decomposition,
            power_family,
            power_normal,
        )

        path = normal_decomposition(braid_divisors, ("a", "b", "a", "a", "b", "a", "a"))
        squared = power_family(braid_divisors, 2)
        grouped = group_power(path, 2, squared)

        assert str(path) == "(a b a, a b a, a)"
        assert len(grouped) == 2
        assert grouped.entries[0] == braid_divisors.backend.parse("a b a a b a")
        assert str(power_normal(braid_divisors, 2, grouped)) == str(path)

    def test_power_normal_rejects(self, braid_divisors):
        """Test that a non-greedy input path is refused."""
        from garside.normal_forms import NormalPath, power_family, power_normal

        b = braid_divisors.backend
        squared = power_family(braid_divisors, 2)
        path = NormalPath((b.parse("a"), b.parse("b")), True, squared)

        with pytest.raises(ValueError):
            power_normal(braid_divisors, 2, path)


class TestFractions:
    """Tests for left_disjoint, symmetric_normal and is_deformation functions."""

    def test_left_disjoint(self, braid3_backend):
        """Test a and b are left-disjoint, a and a b are not."""
        from garside.normal_forms import left_disjoint

        assert left_disjoint(braid3_backend, ("a",), ("b",))
        assert not left_disjoint(braid3_backend, ("a",), ("a", "b"))

    def test_symmetric_normal(self, braid_divisors):
        """Test b a^-1 = (b a)^-1 (a b)."""
        from garside.normal_forms import symmetric_normal

        result = symmetric_normal(braid_divisors, ("a",), ("b",))

        assert str(result) == "(b a) | (a b)"
        assert result.to_dict()["positive"]["entries"] == ["a b"]

    def test_deformation(self, absorb_backend, braid3_backend):
        """Test paths agreeing up to invertibles."""
        from garside.normal_forms import is_deformation

        assert is_deformation(absorb_backend, [("a",)], [("a", "e"), ("e",)])
        assert not is_deformation(braid3_backend, [("a",)], [("b",)])


class TestCanonicalLength:
    """Tests for delta_lift, canonical_length and canonical_distance functions."""

    def test_canonical_length(self, braid3, braid3_backend):
        """Test that Delta has length 0 and Delta.b has length 1."""
        from garside.families import delta_structure
        from garside.normal_forms import canonical_length

        D = delta_structure(braid3_backend, ("a", "b", "a"))

        assert canonical_length(D, braid3.signed("a b a")) == 0
        assert canonical_length(D, braid3.signed("a b a b")) == 1
        assert canonical_length(D, braid3.signed("a^-1")) == 1

    def test_delta_lift(self, braid3, braid3_backend):
        """Test a^-1 = Delta^-1 . phi^-1(b a)."""
        from garside.families import delta_structure
        from garside.normal_forms import delta_lift

        D = delta_structure(braid3_backend, ("a", "b", "a"))

        assert delta_lift(D, braid3.signed("a^-1")) == (1, ("a", "b"))

    def test_canonical_distance(self, braid3, braid3_backend):
        """Test the distance from Delta to Delta.b."""
        from garside.families import delta_structure
        from garside.normal_forms import canonical_distance

        D = delta_structure(braid3_backend, ("a", "b", "a"))

        assert canonical_distance(D, braid3.signed("a b a"), braid3.signed("a b a b")) == 1
