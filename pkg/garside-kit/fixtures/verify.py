"""
fixtures/verify.py

Re-derive every fact recorded in the fixture corpus and report mismatches.

Run with:
    python -m fixtures.verify [NAME_FILTER]
"""

import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from garside.config import get_logger
from garside.divisibility import atoms, equal, left_divisors, right_lcm, right_mcms, select_backend
from garside.errors import GarsideError, NotUnique
from garside.families import (
    Submonoid,
    check_compatibility,
    delta_structure,
    is_garside_family,
    is_solid,
    smallest_garside_family,
)
from garside.germs import (
    embedding_test,
    germ_backend,
    germ_eqir_closed,
    mon_from_germ,
    normality_via_j,
    right_quotient_closed,
    subgerm_closure,
    submonoid_eqir_closed,
    validate_germ,
)
from garside.normal_forms import Family, canonical_length, normal_decomposition
from garside.rc import delta_i, double_bijectivity, structure_monoid, validate_rc
from garside.reversing import completeness_check, left_reverse, right_reverse

from .corpus import ALIASES, FIXTURES, Expectation, Fixture, load_fixture, resolve_fixture

logger = get_logger(__name__)


def _labels(text: str) -> List[str]:
    return [c.strip() for c in text.replace(",", ";").split(";") if c.strip()]


def _backend(p):
    return select_backend(p, allow_bounded=True)


def _family(b, text: str) -> Family:
    if text.startswith("sharp:"):
        return Family.from_text(b, text[len("sharp:") :]).sharp
    return Family.from_text(b, text)


def _reversal(outcome) -> str:
    return str(outcome.result) if outcome.terminated else outcome.status.value


def _lcm_exists(p, u, v) -> bool:
    try:
        return right_lcm(_backend(p), p.word(u), p.word(v)) is not None
    except NotUnique:
        return False


def _nf(p, family: str, word: str) -> str:
    b = _backend(p)
    S = smallest_garside_family(b) if family == "auto" else Family.from_text(b, family)
    return str(normal_decomposition(S, p.word(word)))


def _compat(p, gens, text: str):
    b = _backend(p)
    return check_compatibility(b, [p.word(g) for g in gens], _family(b, text))


def _garside_within(p, gens, text: str) -> bool:
    b = _backend(p)
    N = Submonoid(b, [p.word(g) for g in gens])
    return is_garside_family(b, _family(b, text), within=N).is_garside


def _sub_mon_equal(t, text: str, u: str, v: str) -> bool:
    sub = subgerm_closure(t, _labels(text))
    p = mon_from_germ(sub)
    return germ_backend(sub).equal(p.word(u), p.word(v))


# operation name -> callable(loaded fixture, *args)
OPERATIONS: Dict[str, Callable[..., Any]] = {
    "classify": lambda p: p.classification.to_dict(),
    "reverse": lambda p, w: _reversal(right_reverse(p, p.signed(w))),
    "reverse-left": lambda p, w: _reversal(left_reverse(p, p.signed(w))),
    "complete": lambda p: completeness_check(p).status,
    "cube-triples": lambda p: completeness_check(p).triples_checked,
    "divisors": lambda p, w: len(left_divisors(_backend(p), p.word(w))),
    "smallest-size": lambda p: len(smallest_garside_family(_backend(p))),
    "nf": _nf,
    "canlen": lambda p, delta, w: canonical_length(
        delta_structure(_backend(p), p.word(delta)), p.signed(w)
    ),
    "atoms": lambda p: sorted(str(a) for a in atoms(_backend(p))),
    "duality-failures": lambda p, delta: len(
        delta_structure(_backend(p), p.word(delta)).duality_failures()
    ),
    "mcms": lambda p, u, v: sorted(
        str(m) for m in right_mcms(_backend(p), p.word(u), p.word(v)).elements
    ),
    "lcm-exists": _lcm_exists,
    "equal": lambda p, u, v: equal(_backend(p), p.word(u), p.word(v)),
    "solid": lambda p, text: is_solid(_backend(p), _family(_backend(p), text)),
    "garside-within": _garside_within,
    "compat": lambda p, gens, text: _compat(p, gens, text).compatible,
    "sharp-sizes": lambda p, gens, text: [
        _compat(p, gens, text).sharp_size,
        _compat(p, gens, text).sub_sharp_size,
    ],
    "germ-valid": lambda t: validate_germ(t).is_germ,
    "embed-witness": lambda t: (
        None if embedding_test(t).witness is None else list(embedding_test(t).witness)
    ),
    "mon-relations": lambda t: [str(r) for r in mon_from_germ(t).relations],
    "mon-atoms": lambda t: sorted(str(a) for a in atoms(germ_backend(t))),
    "sub-closure": lambda t, text: sorted(subgerm_closure(t, _labels(text)).carrier),
    "quotient-witness": lambda t, text: list(right_quotient_closed(t, _labels(text))[1] or []),
    "normal-pair": normality_via_j,
    "sub-mon-equal": _sub_mon_equal,
    "eqir-closed": lambda t, text: [
        germ_eqir_closed(t, _labels(text)),
        submonoid_eqir_closed(t, _labels(text)),
    ],
    "rc-quasigroup": lambda x: validate_rc(x).quasigroup,
    "rc-relations": lambda x: len(structure_monoid(x).relations),
    "delta-length": lambda x, text: len(delta_i(x, _labels(text))),
    "double-bijective": lambda x: [
        double_bijectivity(x).diagonal_bijective,
        double_bijectivity(x).pair_map_bijective,
    ],
}


def _matches(actual: Any, expected: Any) -> bool:
    if isinstance(expected, dict) and isinstance(actual, dict):
        return all(actual.get(k) == v for k, v in expected.items())
    return actual == expected


@dataclass
class CheckResult:
    fixture: str
    expectation: Expectation
    actual: Any = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and _matches(self.actual, self.expectation.expected)

    def describe(self) -> str:
        e = self.expectation
        call = f"{e.operation}({', '.join(repr(a) for a in e.args)})"
        if self.passed:
            return f"ok    {self.fixture}: {call} = {e.expected!r} [{e.provenance}: {e.citation}]"
        found = self.error if self.error else repr(self.actual)
        return f"FAIL  {self.fixture}: {call} expected {e.expected!r}, got {found} [{e.provenance}: {e.citation}]"


@dataclass
class VerificationReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict:
        return {
            "checked": len(self.results),
            "failed": len(self.failures),
            "failures": [r.describe() for r in self.failures],
        }


def check_expectation(fixture: Fixture, loaded, expectation: Expectation) -> CheckResult:
    operation = OPERATIONS.get(expectation.operation)
    if operation is None:
        return CheckResult(fixture.name, expectation, error=f"unknown operation {expectation.operation}")
    try:
        actual = operation(loaded, *expectation.args)
    except GarsideError as exc:
        return CheckResult(fixture.name, expectation, error=f"{type(exc).__name__}: {exc}")
    return CheckResult(fixture.name, expectation, actual)


def _selected(name_filter: Optional[str]) -> List[str]:
    if not name_filter:
        return sorted(FIXTURES)
    exact = resolve_fixture(name_filter)
    if exact:
        return sorted(exact)
    names = {n for n in FIXTURES if name_filter in n}
    for alias, targets in ALIASES.items():
        if name_filter in alias:
            names.update(targets)
    return sorted(names)


def verify_fixtures(name_filter: Optional[str] = None) -> VerificationReport:
    """
    Check every expectation of the fixtures selected by name_filter.

    A fixture name, alias or fixture path selects exactly those fixtures;
    any other text selects every fixture or alias containing it.

    Args:
        name_filter: fixture name, alias or substring (all fixtures when None)

    Returns:
        VerificationReport; an empty report when nothing matches
    """
    report = VerificationReport()
    selected = _selected(name_filter)
    if not selected:
        logger.warning("no fixture matches %r", name_filter)
    for name in selected:
        fixture = FIXTURES[name]
        loaded = load_fixture(name)
        for expectation in fixture.expectations:
            result = check_expectation(fixture, loaded, expectation)
            if not result.passed:
                logger.warning(result.describe())
            report.results.append(result)
    return report


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report = verify_fixtures(argv[0] if argv else None)
    for result in report.results:
        print(result.describe())
    if not report.results and argv:
        print(f"no fixture matches {argv[0]!r}")
    print(f"{len(report.results)} checked, {len(report.failures)} failed")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
