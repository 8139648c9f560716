"""
test_properties.py

Property-based tests (hypothesis) for reversing, heads, normal
decompositions, powers and RC-systems.
"""

from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


braid_words = st.lists(st.sampled_from(["a", "b"]), max_size=5).map(tuple)
long_braid_words = st.lists(st.sampled_from(["a", "b"]), max_size=8).map(tuple)
short_braid_words = st.lists(st.sampled_from(["a", "b"]), max_size=3).map(tuple)
twomcm_words = st.lists(st.sampled_from(["a", "b", "a'", "b'"]), max_size=2).map(tuple)


def _braid():
    from fixtures import load_fixture
    from garside.divisibility import select_backend
    from garside.normal_forms import Family

    b = select_backend(load_fixture("braid3"))
    return b, Family.from_text(b, "1; a; b; a b; b a; a b a")


@lru_cache(maxsize=None)
def _rc_quasigroups(n):
    from garside.rc import row_permutation_systems, validate_rc

    return tuple(x for x in row_permutation_systems(n) if validate_rc(x).quasigroup)


@st.composite
def rc_subsets(draw):
    n = draw(st.integers(min_value=2, max_value=4))
    x = draw(st.sampled_from(_rc_quasigroups(n)))
    subset = draw(st.sets(st.sampled_from(x.carrier)))
    return x, sorted(subset)


class TestReversingProperties:
    """Tests for soundness of right reversing."""

    @given(u=short_braid_words, v=short_braid_words)
    @settings(max_examples=100, deadline=None)
    def test_braid_fraction_is_common_multiple(self, u, v):
        """Test u.v' = v.u' for the terminal word v' u'^-1 of u^-1 v."""
        from fixtures import load_fixture
        from garside.divisibility import select_backend
        from garside.presentation import negative_letters, positive_letters
        from garside.reversing import right_reverse

        p = load_fixture("braid3")
        b = select_backend(p)
        outcome = right_reverse(p, negative_letters(u) + positive_letters(v))

        assert outcome.terminated
        v_prime, u_prime = outcome.fractions()[0]
        assert b.equal(u + v_prime, v + u_prime)

    @given(u=twomcm_words, v=twomcm_words)
    @settings(max_examples=100, deadline=None)
    def test_every_alternative_is_sound(self, u, v):
        """Test each terminal word found on a non-complemented presentation."""
        from fixtures import load_fixture
        from garside.divisibility import select_backend
        from garside.presentation import negative_letters, positive_letters
        from garside.reversing import Status, right_reverse

        p = load_fixture("twomcm")
        b = select_backend(p)
        outcome = right_reverse(p, negative_letters(u) + positive_letters(v))

        assert outcome.status is not Status.DIVERGED
        if outcome.terminated:
            for v_prime, u_prime in outcome.fractions():
                assert b.equal(u + v_prime, v + u_prime)


class TestNormalFormProperties:
    """Tests for heads and normal decompositions over the divisors of a b a."""

    @given(g=braid_words)
    @settings(max_examples=100, deadline=None)
    def test_head_is_maximal(self, g):
        """Test that the head divides g and every family divisor of g divides it."""
        from garside.divisibility import left_divides
        from garside.normal_forms import head

        b, S = _braid()
        h = head(S, g)

        assert left_divides(b, h.word, g)
        for t in S:
            if left_divides(b, t.word, g):
                assert left_divides(b, t.word, h.word)

    @given(g=braid_words)
    @settings(max_examples=100, deadline=None)
    def test_decomposition_is_normal(self, g):
        """Test that entries multiply back to g and consecutive pairs are greedy."""
        from garside.normal_forms import is_greedy_pair, normal_decomposition

        b, S = _braid()
        path = normal_decomposition(S, g)

        assert path.product() == b.element(g)
        assert all(e in S for e in path.entries)
        for first, second in zip(path.entries, path.entries[1:]):
            assert is_greedy_pair(S, first, second)

    @given(s=st.sampled_from(["a", "b", "a b", "b a", "a b a"]), g=long_braid_words)
    @settings(max_examples=200, deadline=None)
    def test_left_multiplication(self, s, g):
        """Test that renormalizing s.g agrees with decomposing s.g directly."""
        from garside.normal_forms import left_multiply_normal, normal_decomposition

        b, S = _braid()
        word = tuple(s.split())
        direct = normal_decomposition(S, word + g)
        renormalized = left_multiply_normal(S, word, normal_decomposition(S, g))

        assert renormalized.entries == direct.entries

    @given(g=braid_words)
    @settings(max_examples=100, deadline=None)
    def test_decompositions_are_deformations(self, g):
        """Test that equal words give deformation-equivalent decompositions."""
        from garside.normal_forms import is_deformation, normal_decomposition

        b, S = _braid()
        other = max(b.class_words(g))
        first = normal_decomposition(S, g)
        second = normal_decomposition(S, other)

        assert is_deformation(b, first.entries, second.entries)

    @pytest.mark.parametrize("m", [2, 3])
    @given(g=braid_words)
    @settings(max_examples=100, deadline=None)
    def test_power_grouping(self, m, g):
        """Test that grouping by m and expanding gives the same path."""
        from garside.normal_forms import group_power, normal_decomposition, power_family, power_normal

        _, S = _braid()
        path = normal_decomposition(S, g)
        grouped = group_power(path, m, power_family(S, m))

        assert power_normal(S, m, grouped).entries == path.entries


class TestRCProperties:
    """Tests for Delta_I and double bijectivity."""

    @given(case=rc_subsets())
    @settings(max_examples=100, deadline=None)
    def test_delta_length(self, case):
        """Test that Delta_I has one letter per element of I on RC-quasigroups of size up to 4."""
        from garside.rc import delta_i

        x, subset = case

        assert len(delta_i(x, subset)) == len(subset)

    @pytest.mark.slow
    def test_double_bijectivity_on_three_elements(self):
        """Test that doubleBij and DoubleBij agree on every RC-quasigroup of size 3."""
        from garside.rc import double_bijectivity, row_permutation_systems, validate_rc

        checked = 0
        for x in row_permutation_systems(3):
            if not validate_rc(x).quasigroup:
                continue
            result = double_bijectivity(x)
            assert result.diagonal_bijective == result.pair_map_bijective
            checked += 1

        assert checked > 0
