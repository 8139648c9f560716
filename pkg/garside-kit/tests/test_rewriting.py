"""
test_rewriting.py

Unit tests for rewriting.py.
"""


class TestRewritingSystem:
    """Tests for RewritingSystem class."""

    def test_rules_are_shortlex_oriented(self, absorb):
        """Test that every rule rewrites a word into a shortlex-smaller one."""
        from garside.rewriting import RewritingSystem

        system = RewritingSystem.from_presentation(absorb)

        assert system.rules == ((("e", "a"), ("a",)), (("e", "e"), ()))

    def test_shortlex_ordered(self):
        """Test the orientation helper on equal-length words."""
        from garside.rewriting import shortlex_ordered

        rank = {"a": 0, "b": 1}

        assert shortlex_ordered(("a",), ("b",), rank) == (("b",), ("a",))
        assert shortlex_ordered(("a", "a"), ("b",), rank) == (("a", "a"), ("b",))

    def test_reduce(self, absorb):
        """Test reduction to the irreducible word."""
        from garside.rewriting import RewritingSystem

        system = RewritingSystem.from_presentation(absorb)

        assert system.reduce(("e", "e", "a", "e")) == ("a", "e")
        assert system.reduce(("e", "e")) == ()
        assert system.reduce(("a",)) == ("a",)

    def test_confluent(self, absorb):
        """Test that the overlaps of e a -> a and e e -> 1 resolve."""
        from garside.rewriting import RewritingSystem

        system = RewritingSystem.from_presentation(absorb)

        assert system.is_confluent()
        assert system.unresolved_pairs() == []

    def test_not_confluent(self, braid3):
        """Test the self-overlap of b a b that does not resolve."""
        from garside.rewriting import RewritingSystem

        system = RewritingSystem.from_presentation(braid3)

        assert not system.is_confluent()
        source, _, _ = system.unresolved_pairs()[0]
        assert source == ("b", "a", "b", "a", "b")
