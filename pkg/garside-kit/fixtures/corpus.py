"""
fixtures/corpus.py

The fixture corpus: every presentation, germ table and RC table shipped
with the toolkit, each with the facts it is expected to exhibit, plus the
Artin-Tits generator used for the parameterized large-type fixtures.

Provides:
- FIXTURES                      # name -> Fixture
- ALIASES, resolve_fixture(name) # descriptive names, groups and file paths
- load_fixture(name)            # parsed presentation / germ / RC system
- artin_tits_presentation(matrix)
- uniform_artin_tits(n, m)
- large_type_seed_set(matrix)
- smallest_family_size(n, m)
"""

import os
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

from garside.germs import GermTable, parse_germ
from garside.presentation import Presentation, Word, build_presentation, parse_presentation
from garside.rc import RCSystem, parse_rc

FIXTURE_DIR = os.path.dirname(os.path.abspath(__file__))

PAPER = "PAPER"
DERIVED = "DERIVED"

LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Expectation:
    """One checked fact: operation(args) should give expected."""

    operation: str
    args: Tuple[Any, ...]
    expected: Any
    provenance: str
    citation: str


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str
    filename: str
    expectations: Tuple[Expectation, ...] = field(default=())

    @property
    def path(self) -> str:
        return os.path.join(FIXTURE_DIR, self.filename)

    @property
    def payload(self) -> str:
        with open(self.path, encoding="utf-8") as handle:
            return handle.read()


def _fx(name: str, kind: str, filename: str, *expectations: Expectation) -> Tuple[str, Fixture]:
    return name, Fixture(name, kind, filename, tuple(expectations))


E = Expectation

FIXTURES: Dict[str, Fixture] = dict(
    [
        _fx(
            "braid3", "presentation", "braid3.pres",
            E("classify", (), {"complemented": True, "homogeneous": True}, DERIVED,
              "one relation per pair of distinct generators, both sides of length 3"),
            E("reverse", ("a^-1 b",), "b a b^-1 a^-1", DERIVED, "a single reversing tile"),
            E("complete", (), "Complete", PAPER, "right reversing is complete for braid monoids"),
            E("divisors", ("a b a",), 6, PAPER, "the six-element Garside germ of the divisors of Delta"),
            E("smallest-size", (), 6, PAPER, "the large-type count with n = 2 and m = 3"),
            E("nf", ("auto", "a b a a b a"), "(a b a, a b a)", DERIVED, "Delta squared is (Delta, Delta)"),
            E("canlen", ("a b a", "a b a b"), 1, DERIVED, "a b a b = Delta . b has one non-Delta entry"),
            E("equal", ("b a b a b a", "a b a a b a"), True, PAPER,
              "(ba)^3 = Delta^2 in the braid monoid"),
            E("duality-failures", ("a b a",), 0, PAPER,
              "s left-divides t iff dual(t) right-divides dual(s), on all 36 pairs"),
        ),
        _fx(
            "ex10", "presentation", "ex10.pres",
            E("classify", (), {"complemented": True, "homogeneous": True}, PAPER,
              "a b = b c = c d = d a is a right-complemented presentation"),
            E("divisors", ("a b",), 6, DERIVED, "all four atoms divide a b"),
            E("atoms", (), ["a", "b", "c", "d"], DERIVED, "no relation shortens a single letter"),
        ),
        _fx(
            "ex45", "presentation", "ex45.pres",
            E("classify", (), {"complemented": False, "homogeneous": True}, PAPER,
              "the pair (a, b) heads both a b = b a and a a' = b b'"),
            E("complete", (), "Complete", PAPER, "the cube condition holds on the generators"),
            E("mcms", ("a", "b"), ["a a'", "a b"], PAPER, "a b and a a' are the only right-mcms of a and b"),
            E("mcms", ("a", "a'"), [], PAPER, "a and a' admit no common right-multiple"),
            E("cube-triples", (), 64, PAPER, "the cube condition holds on all 64 generator triples"),
            E("lcm-exists", ("a", "b"), False, PAPER, "a and b admit two right-mcms but no right-lcm"),
            E("equal", ("a a b' a' a'", "a b a' b' b'"), True, PAPER,
              "both words have the normal decomposition (ab, a'b', b')"),
            E("nf", ("auto", "a a b' a' a'"), "(a b, a' b', b')", PAPER,
              "the unique strict normal decomposition is (ab, a'b', b')"),
            E("smallest-size", (), 9, DERIVED, "the eight-element family together with 1"),
        ),
        _fx(
            "ex48", "presentation", "ex48.pres",
            E("classify", (), {"homogeneous": False, "lengthReducingConfluent": True}, PAPER,
              "every element has a unique expression a^p e^q"),
            E("equal", ("e a", "a"), True, PAPER, "e a = a"),
            E("equal", ("a e", "a"), False, PAPER, "a e and a are distinct"),
            E("atoms", (), ["a", "a e"], PAPER, "the atoms are a and a e"),
            E("solid", ("1; a; e",), True, PAPER, "{1, a, e} is a solid Garside family"),
        ),
        _fx(
            "ex49", "presentation", "ex49.pres",
            E("solid", ("a; e",), False, PAPER, "{a, e} is not closed under right-divisor"),
            E("equal", ("e a", "a e"), True, DERIVED, "e is central"),
        ),
        _fx(
            "ex75", "presentation", "ex75.pres",
            E("garside-within", (("a", "a b"), "1; a; b; a b"), False, PAPER,
              "a and a b have no common right-multiple in the family inside the submonoid"),
        ),
        _fx(
            "ex102-abelian3", "presentation", "ex102-abelian3.pres",
            E("smallest-size", (), 8, PAPER, "the family consists of the elements Delta_I"),
            E("divisors", ("a b",), 4, PAPER, "the divisors of Delta_I are the Delta_J with J in I"),
        ),
        _fx(
            "ex102-right-angled", "presentation", "ex102-right-angled.pres",
            E("smallest-size", (), 6, PAPER, "one Delta_I per set of pairwise commuting generators"),
            E("reverse-left", ("a c^-1",), "Stuck", PAPER,
              "a negative letter only vanishes next to the same positive letter"),
        ),
        _fx(
            "ex76", "presentation", "ex76.pres",
            E("compat", (("a", "e"), "a"), False, PAPER,
              "e a lies in the submonoid but not in the family it induces"),
            E("compat", (("a", "e"), "sharp:a"), True, PAPER,
              "the sharp family meets the submonoid in a compatible Garside family"),
            E("sharp-sizes", (("a", "e"), "sharp:a"), [8, 6], PAPER,
              "the sharp family has eight elements, six of them in the submonoid"),
        ),
        _fx(
            "ex116-divergence", "presentation", "ex116-divergence.pres",
            E("reverse", ("a^-1 b a",), "Diverged", PAPER, "reversing cannot be terminating here"),
        ),
        _fx(
            "att-n3-m3", "presentation", "att-n3-m3.pres",
            E("smallest-size", (), 16, PAPER, "the smallest Garside family has 16 elements"),
        ),
        _fx(
            "att-n3-m4", "presentation", "att-n3-m4.pres",
            E("smallest-size", (), 22, PAPER, "(n + 2m - 5)(n choose 2) + n + 1 with n = 3, m = 4"),
        ),
        _fx(
            "att-n4-m3", "presentation", "att-n4-m3.pres",
            E("smallest-size", (), 35, PAPER, "(n + 2m - 5)(n choose 2) + n + 1 with n = 4, m = 3"),
        ),
        _fx(
            "ex65", "germ", "ex65.csv",
            E("germ-valid", (), True, PAPER, "the only eligible triples all satisfy the germ axiom"),
            E("embed-witness", (), ["i", "n"], PAPER, "i and n have the same image in the monoid"),
        ),
        _fx(
            "ex67", "germ", "ex67.csv",
            E("germ-valid", (), True, PAPER, "the three-element table is a germ"),
            E("mon-relations", (), ["e a = a", "e e = 1"], PAPER,
              "the monoid of the germ is presented by e a = a, e e = 1"),
            E("embed-witness", (), None, DERIVED, "1, a and e stay distinct"),
            E("mon-atoms", (), ["a", "a e"], PAPER, "the atoms of the monoid are a and a e"),
        ),
        _fx(
            "ex90", "germ", "ex90.csv",
            E("germ-valid", (), True, PAPER, "the six divisors of Delta form a Garside germ"),
            E("sub-closure", ("a; ba",), ["1", "a", "aba", "ba"], PAPER,
              "closing {a, ba} under product adds 1 and Delta"),
            E("sub-closure", ("a; b",), ["1", "a", "ab", "aba", "b", "ba"], PAPER,
              "a and b generate the whole germ"),
            E("quotient-witness", ("1; a; ba; aba",), ["ba", "b", "aba"], PAPER,
              "the subgerm is not closed under right-quotient"),
            E("normal-pair", ("ab", "b"), True, DERIVED, "no divisor of b can be absorbed into ab"),
            E("normal-pair", ("a", "b"), False, DERIVED, "a . b is defined"),
            E("sub-mon-equal", ("1; a; ba; aba", "ba ba ba", "a ba a ba"), False, PAPER,
              "the monoid of the subgerm does not satisfy y^3 = (xy)^2"),
        ),
        _fx(
            "ex91", "germ", "ex91.csv",
            E("eqir-closed", ("1; a",), [False, False], PAPER,
              "a . e leaves {1, a} in the germ and in the monoid"),
            E("eqir-closed", ("1; e",), [True, True], DERIVED, "the invertibles form a closed subgerm"),
        ),
        _fx(
            "rc-cyclic-3", "rc", "rc-cyclic-3.csv",
            E("rc-quasigroup", (), True, DERIVED, "the 27 triples satisfy the RC law"),
            E("rc-relations", (), 3, DERIVED, "one relation per pair of elements"),
            E("delta-length", ("0; 1; 2",), 3, PAPER, "Delta_I has length |I|"),
            E("double-bijective", (), [True, True], PAPER,
              "the diagonal map and the pair map are bijective together"),
        ),
    ]
)


# descriptive names and groups -> fixture names
ALIASES: Dict[str, Tuple[str, ...]] = {
    "cyclic4": ("ex10",),
    "twomcm": ("ex45",),
    "absorb": ("ex48",),
    "central": ("ex49",),
    "abelian2": ("ex75",),
    "twisted": ("ex76",),
    "abelian3": ("ex102-abelian3",),
    "right-angled": ("ex102-right-angled",),
    "ex102": ("ex102-abelian3", "ex102-right-angled"),
    "ex103": ("att-n3-m3", "att-n3-m4", "att-n4-m3"),
    "divergent": ("ex116-divergence",),
    "nonembed": ("ex65",),
    "absorb-germ": ("ex67",),
    "braid3-germ": ("ex90",),
    "central-germ": ("ex91",),
}


def resolve_fixture(name: str) -> Tuple[str, ...]:
    """
    Fixture names a name or alias stands for.

    A path such as fixtures/ex45.pres resolves through its file stem.

    Returns:
        tuple of fixture names, empty when nothing matches
    """
    stem = os.path.splitext(os.path.basename(name))[0]
    for candidate in (name, stem):
        if candidate in FIXTURES:
            return (candidate,)
        if candidate in ALIASES:
            return ALIASES[candidate]
    return ()


def load_fixture(name: str):
    """
    Parse a fixture by name or alias; a group alias loads its first member.

    Returns:
        Presentation, GermTable or RCSystem according to the fixture kind

    Raises:
        KeyError: when no fixture has that name
    """
    resolved = resolve_fixture(name)
    if not resolved:
        raise KeyError(name)
    fixture = FIXTURES[resolved[0]]
    if fixture.kind == "presentation":
        return parse_presentation(fixture.payload, name=fixture.name)
    if fixture.kind == "germ":
        return parse_germ(fixture.payload, name=fixture.name)
    return parse_rc(fixture.payload, name=fixture.name)


# ---------------------------------------------------------------------------
# Artin-Tits monoids


def alternating(s: str, t: str, m: int) -> Word:
    """s t s t ... with m letters."""
    return tuple(s if i % 2 == 0 else t for i in range(m))


def artin_tits_presentation(
    matrix: Sequence[Sequence[Optional[int]]],
    names: Optional[Sequence[str]] = None,
    name: str = "",
) -> Presentation:
    """
    Presentation of the Artin-Tits monoid of a Coxeter matrix.

    Args:
        matrix: symmetric matrix of m(s, t); None stands for infinity and the
            diagonal is ignored
        names: generator names (a, b, c, ... by default)
        name: display label

    Returns:
        Presentation with one relation per finite off-diagonal entry
    """
    n = len(matrix)
    names = list(names or LETTERS[:n])
    relations = []
    for i, j in combinations(range(n), 2):
        m = matrix[i][j]
        if m is None:
            continue
        s, t = names[i], names[j]
        relations.append((alternating(s, t, m), alternating(t, s, m)))
    return build_presentation(names, relations, name=name)


def uniform_matrix(n: int, m: Optional[int]) -> List[List[Optional[int]]]:
    return [[1 if i == j else m for j in range(n)] for i in range(n)]


def uniform_artin_tits(n: int, m: Optional[int]) -> Presentation:
    """Artin-Tits monoid on n generators with every m(s, t) = m."""
    return artin_tits_presentation(uniform_matrix(n, m), name=f"att-n{n}-m{m}")


def large_type_seed_set(
    matrix: Sequence[Sequence[Optional[int]]], names: Optional[Sequence[str]] = None
) -> List[Word]:
    """
    Seed set whose right-divisor closure is the smallest Garside family of a
    large-type Artin-Tits monoid: isolated generators, Delta_{s,t} for pairs
    no third generator is linked to, and r.Delta_{s,t} for triangles.
    """
    n = len(matrix)
    names = list(names or LETTERS[:n])

    def finite(i: int, j: int) -> bool:
        return matrix[i][j] is not None

    seeds: List[Word] = []
    for i in range(n):
        if all(not finite(i, j) for j in range(n) if j != i):
            seeds.append((names[i],))
    for i, j in combinations(range(n), 2):
        if not finite(i, j):
            continue
        if all(
            not finite(k, i) and not finite(k, j) for k in range(n) if k not in (i, j)
        ):
            seeds.append(alternating(names[i], names[j], matrix[i][j]))
    for k, i, j in permutations(range(n), 3):
        if i < j and finite(k, i) and finite(k, j) and finite(i, j):
            seeds.append((names[k],) + alternating(names[i], names[j], matrix[i][j]))
    return seeds


def smallest_family_size(n: int, m: int) -> int:
    """(n + 2m - 5) C(n, 2) + n + 1."""
    return (n + 2 * m - 5) * comb(n, 2) + n + 1
