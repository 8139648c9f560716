"""
garside/families.py

Closures of finite families under right-divisor and right-mcm, the smallest
Garside family, Garside-family recognition, solidity, bounded structures
(Garside element, duality and the associated automorphism) and submonoid
compatibility.
"""

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .config import get_logger
from .divisibility import (
    Element,
    EqualityBackend,
    atoms,
    ball,
    eqir,
    invertibles,
    is_invertible,
    left_divides,
    left_quotient,
    left_divisors,
    right_divides,
    right_divisors,
    right_gcd,
    right_lcm,
    right_mcms,
    shortlex_sorted,
)
from .errors import (
    CapExceeded,
    Inconclusive,
    NotBounded,
    NotExpressible,
    NotUnique,
)
from .normal_forms import ClosureFlags, Family, normal_decomposition
from .presentation import Word, format_word

logger = get_logger(__name__)


def _exact_right_divisors(b: EqualityBackend, x: Element, bound: Optional[int]) -> List[Element]:
    return right_divisors(b, x, length_cap=bound, exact=True)


def _as_elements(b: EqualityBackend, xs: Iterable) -> Dict[Hashable, Element]:
    found: Dict[Hashable, Element] = {}
    for x in xs:
        elem = x if isinstance(x, Element) else b.element(x)
        found.setdefault(elem.key, elem)
    return found


@dataclass(frozen=True)
class ClosureReport:
    input: Tuple[Element, ...]
    closed: Family
    rounds: int
    bound_hit: bool = False
    undecided: Tuple[Tuple[Word, Word], ...] = ()

    def to_dict(self) -> Dict:
        return {
            "input": sorted(str(e) for e in self.input),
            "closed": self.closed.to_dict(),
            "rounds": self.rounds,
            "boundHit": self.bound_hit,
            "undecided": [[format_word(u), format_word(v)] for u, v in self.undecided],
        }


# ---------------------------------------------------------------------------
# closures


def close_under_right_divisors(
    b: EqualityBackend, X: Iterable, bound: Optional[int] = None
) -> ClosureReport:
    """
    Smallest superset of X closed under right-divisor.

    Args:
        b: backend
        X: words or elements
        bound: longest divisor searched on non-homogeneous backends

    Returns:
        ClosureReport; bound_hit is set when a divisor search ran into the state cap
    """
    members = _as_elements(b, X)
    start = tuple(shortlex_sorted(b, members.values()))
    frontier = list(start)
    rounds = 0
    bound_hit = False
    while frontier:
        rounds += 1
        fresh = []
        for x in frontier:
            try:
                divisors = _exact_right_divisors(b, x, bound)
            except CapExceeded as exc:
                logger.warning("right-divisors of %s: %s", x, exc)
                bound_hit = True
                continue
            for d in divisors:
                if d.key not in members:
                    members[d.key] = d
                    fresh.append(d)
        frontier = fresh
    flags = ClosureFlags(right_divisor_closed=None if bound_hit else True)
    return ClosureReport(start, Family(b, members.values(), flags), rounds, bound_hit)


def close_under_right_mcm(
    b: EqualityBackend,
    X: Iterable,
    bound: Optional[int] = None,
    right_divisors: bool = False,
) -> ClosureReport:
    """
    Smallest superset of X containing every right-mcm of two of its elements.

    With right_divisors=True the closure alternates with right-divisor
    closure until both are stable.

    Args:
        b: backend
        X: words or elements
        bound: enumeration bound handed to right_mcms
        right_divisors: also close under right-divisor

    Returns:
        ClosureReport; pairs whose mcms could not be decided are listed in undecided
    """
    members = _as_elements(b, X)
    start = tuple(shortlex_sorted(b, members.values()))
    done = set()
    expanded = set()
    undecided: List[Tuple[Word, Word]] = []
    bound_hit = False
    rounds = 0
    changed = True
    while changed:
        rounds += 1
        changed = False
        current = shortlex_sorted(b, members.values())
        for i, x in enumerate(current):
            for y in current[i + 1 :]:
                pair = (x.word, y.word)
                if pair in done:
                    continue
                done.add(pair)
                try:
                    mcms = right_mcms(b, x, y, bound)
                except Inconclusive as exc:
                    logger.warning("right-mcms of %s and %s: %s", x, y, exc)
                    undecided.append(pair)
                    continue
                bound_hit = bound_hit or mcms.cap_exceeded
                for m in mcms.elements:
                    if m.key not in members:
                        members[m.key] = m
                        changed = True
        if not right_divisors:
            continue
        for x in shortlex_sorted(b, members.values()):
            if x.word in expanded:
                continue
            expanded.add(x.word)
            try:
                divisors = _exact_right_divisors(b, x, bound)
            except CapExceeded as exc:
                logger.warning("right-divisors of %s: %s", x, exc)
                bound_hit = True
                continue
            for d in divisors:
                if d.key not in members:
                    members[d.key] = d
                    changed = True
    clean = not bound_hit and not undecided
    flags = ClosureFlags(
        right_divisor_closed=True if right_divisors and clean else None,
        right_mcm_closed=True if clean else None,
    )
    return ClosureReport(
        start, Family(b, members.values(), flags), rounds, bound_hit, tuple(undecided)
    )


def smallest_garside_family(b: EqualityBackend, bound: Optional[int] = None) -> Family:
    """
    Closure of the atoms and the identity under right-mcm and right-divisor.

    Raises:
        NotNoetherian: when the presentation carries no Noetherianity certificate
    """
    seeds = atoms(b) + [b.element(())]
    report = close_under_right_mcm(b, seeds, bound, right_divisors=True)
    if report.bound_hit or report.undecided:
        logger.warning(
            "smallest family of %s is incomplete: bound hit or undecided pairs",
            b.presentation.name or "presentation",
        )
    family = report.closed
    return Family(b, family.elements, family.flags, name="smallest")


# ---------------------------------------------------------------------------
# flags and recognition


def right_comultiple_closed(b: EqualityBackend, S: Family) -> bool:
    """
    Every right-mcm of two elements of S is =~ to an element of S (so every
    common right-multiple lies above a common right-multiple in S).
    """
    for i, s in enumerate(S.elements):
        for t in S.elements[i:]:
            for m in right_mcms(b, s, t).elements:
                if not any(eqir(b, r, m) for r in S.elements):
                    return False
    return True


def closure_flags(b: EqualityBackend, S: Family) -> ClosureFlags:
    """Check and record the three closure properties of S."""
    divisor_closed = all(
        S.in_sharp(d) for s in S.elements for d in right_divisors(b, s)
    )
    mcm_closed = all(
        S.in_sharp(m)
        for i, s in enumerate(S.elements)
        for t in S.elements[i + 1 :]
        for m in right_mcms(b, s, t).elements
    )
    return ClosureFlags(divisor_closed, mcm_closed, right_comultiple_closed(b, S))


@dataclass(frozen=True)
class GarsideVerdict:
    is_garside: bool
    criterion: str
    reasons: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.is_garside

    def to_dict(self) -> Dict:
        return {"garside": self.is_garside, "criterion": self.criterion, "reasons": list(self.reasons)}


def is_garside_family(
    b: EqualityBackend, S: Family, within: Optional["Submonoid"] = None
) -> GarsideVerdict:
    """
    Recognize a Garside family by generation plus closure under right-divisor
    and right-mcm (taken relative to `within` when a submonoid is given).

    Raises:
        Inconclusive: when the presentation is not certified Noetherian
    """
    if not b.presentation.noetherian_certified:
        raise Inconclusive("Garside-family recognition needs a Noetherian presentation")
    if within is not None:
        return _is_garside_in_submonoid(b, S, within)
    p = b.presentation
    reasons: List[str] = []
    for name in p.generator_names:
        if name in p.invertible_names or S.in_sharp((name,)):
            continue
        reasons.append(f"generator {name} is not in the family")
    units = invertibles(b)
    for e in units:
        for s in S.elements:
            if not S.in_sharp(e.word + s.word):
                reasons.append(f"{format_word(e.word + s.word)} is not in the family")
    for s in S.elements:
        for d in right_divisors(b, s):
            if not S.in_sharp(d):
                reasons.append(f"{d} right-divides {s} but is not in the family")
    for i, s in enumerate(S.elements):
        for t in S.elements[i + 1 :]:
            for m in right_mcms(b, s, t).elements:
                if not S.in_sharp(m):
                    reasons.append(f"right-mcm {m} of {s} and {t} is not in the family")
    verdict = GarsideVerdict(not reasons, "right-divisor and right-mcm closure", tuple(reasons))
    logger.info("%s: garside=%s", S, verdict.is_garside)
    return verdict


# ---------------------------------------------------------------------------
# solidity


def is_solid(b: EqualityBackend, S: Family) -> bool:
    """S contains the identity and every right-divisor of its elements."""
    if not any(s.is_identity for s in S.elements):
        logger.info("%s does not contain the identity", S)
        return False
    for s in S.elements:
        for d in right_divisors(b, s, exact=True):
            if d not in S:
                logger.info("%s right-divides %s but is not in %s", d, s, S)
                return False
    return True


# ---------------------------------------------------------------------------
# bounded structures


class DeltaStructure:
    """
    Divisors of a Garside element Delta together with the duality
    s -> s\\Delta and its square phi.
    """

    def __init__(
        self,
        backend: EqualityBackend,
        delta: Element,
        divisors: Family,
        dual: Dict[Hashable, Element],
        phi: Dict[Hashable, Element],
    ):
        self.backend = backend
        self.delta = delta
        self.divisors = divisors
        self.dual = dual
        self.phi = phi
        self._phi_inverse = {phi[s.key].key: s for s in divisors}

    def dual_of(self, x) -> Optional[Element]:
        word = x.word if isinstance(x, Element) else tuple(x)
        return self.dual.get(self.backend.key(word))

    def phi_of(self, x) -> Optional[Element]:
        word = x.word if isinstance(x, Element) else tuple(x)
        return self.phi.get(self.backend.key(word))

    def phi_inverse_word(self, word: Sequence[str]) -> Word:
        """Apply phi^-1 letter by letter."""
        result: Word = ()
        for name in word:
            source = self._phi_inverse.get(self.backend.key((name,)))
            if source is None:
                raise NotExpressible(f"{name} is not in the image of phi")
            result += source.word
        return result

    def delta_power(self, m: int) -> Word:
        return self.delta.word * m

    def iterated_dual(self, g, m: int) -> Optional[Element]:
        """g\\Delta^m, or None when g does not left-divide Delta^m."""
        word = g.word if isinstance(g, Element) else tuple(g)
        rest = left_quotient(self.backend, word, self.delta_power(m))
        return None if rest is None else self.backend.element(rest)

    def duality_failures(self) -> List[Tuple[Element, Element]]:
        """Pairs (s, t) breaking: s left-divides t iff dual(t) right-divides dual(s)."""
        b = self.backend
        failures = []
        for s in self.divisors:
            for t in self.divisors:
                forward = left_divides(b, s.word, t.word)
                backward = right_divides(b, self.dual[t.key].word, self.dual[s.key].word)
                if forward != backward:
                    failures.append((s, t))
        return failures

    def phi_injective_on_pairs(self) -> bool:
        """s.t -> phi(s).phi(t) is well defined and injective on pairs of divisors."""
        b = self.backend
        images: Dict[Hashable, Hashable] = {}
        sources: Dict[Hashable, Hashable] = {}
        for s in self.divisors:
            for t in self.divisors:
                product = b.key(s.word + t.word)
                image = b.key(self.phi[s.key].word + self.phi[t.key].word)
                if images.setdefault(product, image) != image:
                    return False
                if sources.setdefault(image, product) != product:
                    return False
        return True

    def lcm_gcd_failures(self) -> List[Tuple[Element, Element]]:
        """Pairs whose right-lcm h does not have dual(h) as right-gcd of the duals."""
        b = self.backend
        failures = []
        for i, f in enumerate(self.divisors.elements):
            for g in self.divisors.elements[i + 1 :]:
                try:
                    h = right_lcm(b, f, g)
                    dual_h = self.dual_of(h) if h is not None else None
                    gcd = right_gcd(b, self.dual[f.key], self.dual[g.key])
                except NotUnique:
                    failures.append((f, g))
                    continue
                if dual_h is None or gcd is None or not b.equal(dual_h.word, gcd.word):
                    failures.append((f, g))
        return failures

    def to_dict(self) -> Dict:
        return {
            "delta": str(self.delta),
            "divisors": self.divisors.to_dict(),
            "dual": {str(s): str(self.dual[s.key]) for s in self.divisors},
            "phi": {str(s): str(self.phi[s.key]) for s in self.divisors},
        }


def delta_structure(b: EqualityBackend, delta) -> DeltaStructure:
    """
    Divisors, duality and phi for a candidate Garside element.

    Raises:
        NotBounded: when some s\\Delta is not a left-divisor of Delta, or phi
            does not permute the divisors
    """
    D = delta if isinstance(delta, Element) else b.element(delta)
    divisors = Family(b, left_divisors(b, D), name="Div(Delta)")
    dual: Dict[Hashable, Element] = {}
    for s in divisors:
        rest = left_quotient(b, s.word, D.word)
        complement = b.element(rest)
        if complement not in divisors:
            raise NotBounded(f"{s}\\{D} = {complement} does not left-divide {D}")
        dual[s.key] = complement
    phi = {s.key: dual[dual[s.key].key] for s in divisors}
    if len({image.key for image in phi.values()}) != len(divisors):
        raise NotBounded(f"phi does not permute the divisors of {D}")
    structure = DeltaStructure(b, D, divisors, dual, phi)
    logger.info("Delta = %s has %d divisors", D, len(divisors))
    return structure


# ---------------------------------------------------------------------------
# submonoids


class Submonoid:
    """
    The submonoid N generated by a few words, explored up to `radius`
    generator factors, with divisibility and mcms taken inside N.
    """

    def __init__(self, backend: EqualityBackend, generators: Iterable, radius: int = 4):
        self.backend = backend
        self.generators = list(_as_elements(backend, generators).values())
        self.radius = radius
        self.members = self._explore()
        self.keys = frozenset(m.key for m in self.members)

    def _explore(self) -> List[Element]:
        b = self.backend
        identity = b.element(())
        seen = {identity.key: identity}
        layer = [identity]
        for _ in range(self.radius):
            fresh = []
            for x in layer:
                for g in self.generators:
                    y = b.element(x.word + g.word)
                    if y.key not in seen:
                        seen[y.key] = y
                        fresh.append(y)
            layer = fresh
        return shortlex_sorted(b, seen.values())

    def __contains__(self, x) -> bool:
        word = x.word if isinstance(x, Element) else tuple(x)
        return self.backend.key(word) in self.keys

    def divides(self, u, v) -> bool:
        """u.w = v for some w in N."""
        b = self.backend
        u = u.word if isinstance(u, Element) else tuple(u)
        v = v.word if isinstance(v, Element) else tuple(v)
        return any(b.equal(u + w.word, v) for w in self.members)

    def invertibles(self) -> List[Element]:
        b = self.backend
        return [
            x
            for x in self.members
            if is_invertible(b, x) and any(b.equal(x.word + y.word, ()) for y in self.members)
        ]

    def mcms(self, u, v) -> List[Element]:
        """Minimal common right-multiples of u and v inside N."""
        common = [m for m in self.members if self.divides(u, m) and self.divides(v, m)]
        return [
            m
            for m in common
            if not any(c is not m and self.divides(c, m) and not self.divides(m, c) for c in common)
        ]

    def right_quotient_witness(
        self, radius: int = 3, invertible_quotients: bool = True
    ) -> Optional[Tuple[Element, Element]]:
        """
        (g, g.h) with g and g.h in N but h outside N, if the search finds one.
        With invertible_quotients False, only non-invertible h count.
        """
        b = self.backend
        outside = [h for h in ball(b, radius) if h not in self]
        if not invertible_quotients:
            outside = [h for h in outside if not is_invertible(b, h)]
        for g in self.members:
            if g.is_identity:
                continue
            for h in outside:
                product = b.element(g.word + h.word)
                if product in self:
                    return g, product
        return None

    def sharp(self, S: Family) -> Family:
        """(S n N).N* u N*."""
        units = self.invertibles()
        inside = [s for s in S if s in self]
        members = [s * e for s in inside for e in units] + units
        return Family(self.backend, members, name=f"{S.name} in N#")


def _is_garside_in_submonoid(b: EqualityBackend, S: Family, N: Submonoid) -> GarsideVerdict:
    inside = Family(b, [s for s in S if s in N])
    sharp = N.sharp(S)
    reasons: List[str] = []
    for g in N.generators:
        if g not in sharp:
            reasons.append(f"generator {g} of the submonoid is not in the family")
    for i, s in enumerate(inside.elements):
        for t in inside.elements[i + 1 :]:
            found = N.mcms(s, t)
            if found and not any(m in sharp for m in found):
                reasons.append(f"{s} and {t} have no common right-multiple in the family")
    verdict = GarsideVerdict(not reasons, "right-mcm closure inside the submonoid", tuple(reasons))
    logger.info("%s inside submonoid: garside=%s", inside, verdict.is_garside)
    return verdict


@dataclass(frozen=True)
class CompatibilityVerdict:
    compatible: bool
    right_quotient_closed: bool
    sharp_size: int
    sub_sharp_size: int
    reasons: Tuple[str, ...] = ()
    witness: Optional[Tuple[Word, ...]] = field(default=None)
    closure_witness: Optional[Tuple[Word, Word]] = None

    def __bool__(self) -> bool:
        return self.compatible

    def to_dict(self) -> Dict:
        data = {
            "compatible": self.compatible,
            "rightQuotientClosed": self.right_quotient_closed,
            "sharpSize": self.sharp_size,
            "subSharpSize": self.sub_sharp_size,
            "reasons": list(self.reasons),
        }
        if self.witness is not None:
            data["witness"] = [format_word(w) for w in self.witness]
        if self.closure_witness is not None:
            data["closureWitness"] = [format_word(w) for w in self.closure_witness]
        return data


def _unit_inverse(b: EqualityBackend, e: Element, units: Sequence[Element]) -> Element:
    for u in units:
        if b.equal(e.word + u.word, ()):
            return u
    raise Inconclusive(f"no inverse of {e} among the invertible elements")


def _deformation_inside(b: EqualityBackend, path, sub_sharp: Family, units: Sequence[Element]) -> bool:
    """
    Whether some deformation (e0^-1 s1 e1, e1^-1 s2 e2, ...) of the path by
    invertible elements, with e0 = 1 and a trivial last factor, keeps every
    entry in sub_sharp.
    """
    if not path.entries:
        return path.invertible is None or path.invertible in sub_sharp
    identity = b.element(())
    frontier = {identity.key: identity}
    last = len(path.entries) - 1
    for i, s in enumerate(path.entries):
        tails = [identity] if i == last else list(units)
        reached: Dict[Hashable, Element] = {}
        for e in frontier.values():
            e_inv = _unit_inverse(b, e, units)
            for d in tails:
                if b.element(e_inv.word + s.word + d.word) in sub_sharp:
                    reached.setdefault(d.key, d)
        if not reached:
            return False
        frontier = reached
    return True


def check_compatibility(
    b: EqualityBackend, sub_generators: Iterable, S: Family, radius: int = 4
) -> CompatibilityVerdict:
    """
    Check that the submonoid N generated by sub_generators is compatible
    with S: N is generated by S1# = (S n N).N* u N*, and every product of two
    elements of S1# has an S-normal decomposition with entries in S1#, up to
    deformation by invertible elements.

    The two conditions decide compatibility when N is closed under
    right-quotient. Closure up to invertible quotients is accepted: a pair
    g, g.h in N with h outside N is tolerated when h is invertible and N
    is closed under inverse. Any other pair makes the verdict incompatible,
    with the pair reported as closure_witness.

    Args:
        b: backend
        sub_generators: words generating N
        S: Garside family of the ambient monoid
        radius: number of generator factors explored in N

    Returns:
        CompatibilityVerdict with the first failing product as witness and,
        when N is not closed under right-quotient, the pair (g, g.h) showing it
    """
    N = Submonoid(b, sub_generators, radius)
    found = N.right_quotient_witness()
    closure_witness = None if found is None else (found[0].word, found[1].word)
    sub_sharp = N.sharp(S)
    units = invertibles(b)
    reasons: List[str] = []
    witness = None
    for g in N.generators:
        if g not in sub_sharp:
            reasons.append(f"generator {g} of the submonoid is not in the family")
    if not reasons:
        for x in sub_sharp:
            for y in sub_sharp:
                path = normal_decomposition(S, x.word + y.word)
                if not _deformation_inside(b, path, sub_sharp, units):
                    reasons.append(f"{x} . {y} has normal decomposition {path} leaving the family")
                    witness = (x.word, y.word) + tuple(path.words())
                    break
            if witness is not None:
                break
    if closure_witness is not None:
        g, gh = closure_witness
        logger.warning(
            "submonoid is not closed under right-quotient: %s and %s", format_word(g), format_word(gh)
        )
        strict = N.right_quotient_witness(invertible_quotients=False)
        if strict is not None:
            closure_witness = (strict[0].word, strict[1].word)
            reasons.append(
                f"{strict[0]} and {strict[1]} lie in the submonoid but the quotient is neither in it nor invertible"
            )
        inverse_closed = Family(b, N.invertibles())
        lost = next((x for x in N.members if is_invertible(b, x) and x not in inverse_closed), None)
        if lost is not None:
            reasons.append(f"the inverse of {lost} is not in the submonoid")
    return CompatibilityVerdict(
        compatible=not reasons,
        right_quotient_closed=closure_witness is None,
        sharp_size=len(S.sharp),
        sub_sharp_size=len(sub_sharp),
        reasons=tuple(reasons),
        witness=witness,
        closure_witness=closure_witness,
    )
