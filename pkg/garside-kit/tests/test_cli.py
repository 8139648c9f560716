"""
test_cli.py

Tests for the garside command-line interface (cli.py), run through click's
CliRunner against the shipped fixtures.
"""

import json

import pytest
from click.testing import CliRunner


@pytest.fixture
def run():
    """Invoke the CLI and return the click Result."""
    from garside.cli import cli

    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args), obj={})

    return invoke


class TestPresentationCommands:
    """Tests for parse, classify, eq and the divisibility commands."""

    def test_parse_file(self, run, tmp_path):
        """Test printing a presentation file back in canonical form."""
        path = tmp_path / "braid.pres"
        path.write_text("gens: a, b\nrels: a b a = b a b\n", encoding="utf-8")

        result = run("parse", str(path))

        assert result.exit_code == 0
        assert result.stdout == "gens: a, b\nrels:\na b a = b a b\n"

    def test_parse_error_exit_code(self, run, tmp_path):
        """Test that a syntax error exits with code 2."""
        path = tmp_path / "bad.pres"
        path.write_text("gens: a\nrels: a b = a\n", encoding="utf-8")

        result = run("parse", str(path))

        assert result.exit_code == 2
        assert "ERROR:" in result.stderr

    def test_unknown_source(self, run):
        """Test a source that is neither a file nor a fixture."""
        result = run("classify", "no-such-thing")

        assert result.exit_code == 2

    def test_classify(self, run):
        """Test the flag listing."""
        result = run("classify", "braid3")

        assert result.exit_code == 0
        assert "complemented: yes" in result.stdout
        assert "triangular: no" in result.stdout

    def test_eq(self, run):
        """Test equality through the braid relation."""
        result = run("eq", "braid3", "a b a", "b a b")

        assert result.exit_code == 0
        assert result.stdout.strip() == "yes"

    def test_eq_json(self, run):
        """Test machine-readable output."""
        result = run("--json", "eq", "braid3", "a b", "b a")

        assert json.loads(result.stdout) == {"equal": False, "backend": "HomogeneousBFS"}

    def test_eq_bounded_search_inconclusive(self, run, tmp_path):
        """Test that an undecided bounded comparison exits 1 instead of printing no."""
        path = tmp_path / "stretched.pres"
        path.write_text(
            "gens: a, b, c\nrels:\na = b b b b b b b\na b = b a\n"
            "c b b b b b b b = b b b b b b b c\n",
            encoding="utf-8",
        )

        result = run("eq", str(path), "a c", "c a")

        assert result.exit_code == 1
        assert "ERROR:" in result.stderr
        assert "no" not in result.stdout.split()

    def test_div_count(self, run):
        """Test counting the divisors of a b a."""
        result = run("div", "braid3", "a b a", "--count")

        assert result.stdout.strip() == "6"

    def test_div_two_words(self, run):
        """Test deciding divisibility."""
        assert run("div", "braid3", "a", "b a b").stdout.strip() == "yes"
        assert run("div", "braid3", "a", "a b", "--right").stdout.strip() == "no"

    def test_lcm(self, run):
        """Test the right-lcm of a and b."""
        assert run("lcm", "braid3", "a", "b").stdout.strip() == "a b a"

    def test_lcm_not_unique(self, run):
        """Test that two mcms make lcm fail with exit code 1."""
        result = run("lcm", "twomcm", "a", "b")

        assert result.exit_code == 1
        assert "ERROR:" in result.stderr

    def test_mcm(self, run):
        """Test listing mcms, and none for a and a'."""
        assert run("mcm", "twomcm", "a", "b").stdout.splitlines() == ["a a'", "a b"]
        assert run("mcm", "twomcm", "a", "a'").stdout.strip() == "none"

    def test_atoms(self, run):
        """Test the atoms of <a, e | e a = a, e e = 1>."""
        assert run("atoms", "absorb").stdout.splitlines() == ["a", "a e"]


class TestReversingCommands:
    """Tests for reverse, theta and complete."""

    def test_reverse(self, run):
        """Test one reversing step."""
        result = run("reverse", "braid3", "a^-1 b")

        assert result.exit_code == 0
        assert result.stdout.strip() == "b a b^-1 a^-1"

    def test_reverse_left(self, run):
        """Test left reversing."""
        assert run("reverse", "braid3", "b a^-1", "--left").stdout.strip() == "a^-1 b^-1 a b"

    def test_reverse_trace(self, run):
        """Test that --trace writes the steps to stderr."""
        result = run("--trace", "reverse", "braid3", "a^-1 a^-1 b")

        assert result.exit_code == 0
        assert "->" in result.stderr
        assert "->" not in result.stdout

    def test_reverse_diverges(self, run):
        """Test that divergence is reported with exit code 1."""
        result = run("reverse", "divergent", "a^-1 b a")

        assert result.exit_code == 1
        assert result.stdout.strip() == "Diverged"
        assert "ERROR:" in result.stderr

    def test_max_steps_must_be_positive(self, run):
        """Test the range check on the global budget flag."""
        assert run("--max-steps", "0", "reverse", "braid3", "a^-1 b").exit_code == 2

    def test_theta(self, run):
        """Test theta* and an undefined complement."""
        assert run("theta", "braid3", "a a", "b").stdout.strip() == "b a"
        assert run("theta", "right-angled", "a", "c").stdout.strip() == "undefined"

    def test_complete(self, run):
        """Test completeness of the braid presentation."""
        result = run("complete", "braid3")

        assert result.exit_code == 0
        assert result.stdout.strip() == "Complete"


class TestNormalFormCommands:
    """Tests for nf, symnf and canlen."""

    def test_nf(self, run):
        """Test the normal decomposition with the smallest family."""
        assert run("nf", "braid3", "a b a a b a").stdout.strip() == "(a b a, a b a)"

    def test_nf_fixture_path(self, run):
        """Test a fixture given as fixtures/<name>.pres from any working directory."""
        result = run("nf", "fixtures/ex45.pres", "--family", "auto", "a a b' a' a'")

        assert result.exit_code == 0
        assert result.stdout.strip() == "(a b, a' b', b')"

    def test_nf_with_family(self, run):
        """Test an explicit family."""
        result = run("nf", "braid3", "a b b", "--family", "1; a; b; a b; b a; a b a")

        assert result.stdout.strip() == "(a b, b)"

    def test_symnf(self, run):
        """Test the symmetric decomposition of a^-1 b."""
        assert run("symnf", "braid3", "a", "b").stdout.strip() == "(b a) | (a b)"

    def test_canlen(self, run):
        """Test canonical length and distance."""
        assert run("canlen", "braid3", "a b a b", "--delta", "a b a").stdout.strip() == "1"
        result = run("canlen", "braid3", "a b a", "--delta", "a b a", "--to", "a b a b")
        assert result.stdout.strip() == "1"


class TestFamilyCommands:
    """Tests for family, solid and compat."""

    def test_smallest(self, run):
        """Test the size of the smallest family."""
        assert run("family", "smallest", "braid3", "--count").stdout.strip() == "6"

    def test_check(self, run):
        """Test that {a, b} is not a Garside family."""
        result = run("family", "check", "braid3", "a; b")

        assert result.stdout.splitlines()[0] == "not garside"

    def test_close(self, run):
        """Test right-divisor closure of a b a."""
        result = run("family", "close", "braid3", "a b a")

        assert len(result.stdout.splitlines()) == 6

    def test_solid(self, run):
        """Test solidity."""
        assert run("solid", "absorb", "1; a; e").stdout.strip() == "yes"

    def test_compat(self, run):
        """Test compatibility of <a, e> with the sharp closure of {a}."""
        result = run("compat", "twisted", "a", "--sub", "a; e", "--sharp")

        assert result.stdout.splitlines()[:2] == [
            "compatible",
            "family size 8, inside the submonoid 6",
        ]


class TestGermAndRCCommands:
    """Tests for the germ and rc groups."""

    def test_germ_check(self, run):
        """Test validating a germ table."""
        assert run("germ", "check", "braid3-germ").stdout.strip() == "germ"

    def test_germ_mon(self, run):
        """Test the presented monoid of a germ."""
        assert "e a = a" in run("germ", "mon", "absorb-germ").stdout

    def test_germ_embed(self, run):
        """Test the collapse witness."""
        assert run("germ", "embed", "nonembed").stdout.strip() == "fails: i = n"

    def test_germ_sub(self, run):
        """Test the subgerm generated by a and ba."""
        lines = run("germ", "sub", "braid3-germ", "a; ba").stdout.splitlines()

        assert lines[0] == "closure: 1, a, aba, ba"
        assert lines[1] == "right-quotient closed: no"
        assert lines[-1] == "witness: ba . b = aba"

    def test_germ_source_kind(self, run):
        """Test that a presentation fixture is not accepted as a germ."""
        assert run("germ", "check", "braid3").exit_code == 2

    def test_rc_check(self, run):
        """Test the RC report of Z/3."""
        result = run("rc", "check", "rc-cyclic-3")

        assert "RC law: yes" in result.stdout
        assert "pair map bijective: yes" in result.stdout

    def test_rc_delta_json(self, run):
        """Test Delta_I of the whole carrier."""
        result = run("--json", "rc", "delta", "rc-cyclic-3", "0; 1; 2")

        assert json.loads(result.stdout)["length"] == 3

    def test_rc_nu_bad_label(self, run):
        """Test a label outside the carrier."""
        assert run("rc", "nu", "rc-cyclic-3", "0; 9").exit_code == 2


class TestFixtureCommands:
    """Tests for fixtures list and fixtures verify."""

    def test_list(self, run):
        """Test listing fixtures of one kind."""
        result = run("fixtures", "list", "--kind", "rc")

        assert result.stdout.split() == ["rc-cyclic-3", "rc", "4"]

    def test_verify_subset(self, run):
        """Test verifying the RC fixture."""
        result = run("fixtures", "verify", "rc-cyclic")

        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1] == "4 checked, 0 failed"

    def test_verify_nothing(self, run):
        """Test a filter matching no fixture."""
        result = run("fixtures", "verify", "nonexistent")

        assert result.exit_code == 0
        assert result.stdout.splitlines() == ["no fixture matches 'nonexistent'", "0 checked, 0 failed"]

    def test_verify_numbered_name(self, run):
        """Test that a numbered fixture name is checked rather than silently skipped."""
        result = run("fixtures", "verify", "ex65")

        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1] == "2 checked, 0 failed"
