"""
garside/divisibility.py

Equality backends, elements, and the divisibility lattice: left/right
divisibility and quotients, divisor enumeration, right-lcms, right-mcms,
gcds, invertible elements, atoms and height.
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from .config import get_logger, get_settings
from .errors import (
    BackendInapplicable,
    CapExceeded,
    Inconclusive,
    InvariantViolation,
    NoCommonLeftMultiple,
    NotNoetherian,
    NotUnique,
)
from .presentation import Presentation, Word, format_word, negative_letters, positive_letters
from .rewriting import RewritingSystem

logger = get_logger(__name__)


class BackendKind(str, Enum):
    DOUBLE_REVERSING = "DoubleReversing"
    HOMOGENEOUS_BFS = "HomogeneousBFS"
    CONFLUENT_REWRITING = "ConfluentRewriting"
    BOUNDED_SEARCH = "BoundedSearch"


def _relation_moves(p: Presentation) -> List[Tuple[Word, Word]]:
    moves = []
    for rel in p.relations:
        moves.append((rel.lhs, rel.rhs))
        moves.append((rel.rhs, rel.lhs))
    return moves


def _neighbours(word: Word, moves: Sequence[Tuple[Word, Word]]) -> Iterable[Word]:
    for old, new in moves:
        n = len(old)
        if n == 0:
            # w = 1 read right to left inserts w anywhere
            for i in range(len(word) + 1):
                yield word[:i] + new + word[i:]
            continue
        for i in range(len(word) - n + 1):
            if word[i : i + n] == old:
                yield word[:i] + new + word[i + n :]


class EqualityBackend:
    """
    Decides u = v in the presented monoid and hands out canonical keys.

    Subclasses differ in how keys are computed; every other operation in
    this module is written against key() and equal().
    """

    kind: BackendKind

    def __init__(self, p: Presentation):
        self.presentation = p
        self._ball_cache: Dict[int, List["Element"]] = {}

    def key(self, word: Sequence[str]) -> Hashable:
        raise NotImplementedError

    def representative(self, word: Sequence[str]) -> Word:
        return tuple(word)

    def equal(self, u: Sequence[str], v: Sequence[str]) -> bool:
        return self.key(tuple(u)) == self.key(tuple(v))

    def element(self, word: Sequence[str]) -> "Element":
        word = tuple(word)
        return Element(self.representative(word), self, self.key(word))

    def parse(self, text: str) -> "Element":
        return self.element(self.presentation.word(text))

    def left_remainders(self, u: Sequence[str], v: Sequence[str]) -> List[Word]:
        """Every w (up to equality) with u.w = v."""
        u, v = tuple(u), tuple(v)
        found: Dict[Hashable, Word] = {}
        for candidate in ball(self, len(v) + get_settings().ball_slack):
            if candidate.key not in found and self.equal(u + candidate.word, v):
                found[candidate.key] = candidate.word
        return list(found.values())

    def left_quotient(self, u: Sequence[str], v: Sequence[str]) -> Optional[Word]:
        remainders = self.left_remainders(u, v)
        return remainders[0] if remainders else None

    def mirror(self) -> "EqualityBackend":
        return select_backend(self.presentation.mirror(), allow_bounded=True)

    def __repr__(self) -> str:
        return f"<{self.kind.value} {self.presentation.name or 'presentation'}>"


class HomogeneousBFS(EqualityBackend):
    """Equality classes are finite; enumerate them breadth-first."""

    kind = BackendKind.HOMOGENEOUS_BFS

    def __init__(self, p: Presentation):
        if not p.classification.homogeneous:
            raise BackendInapplicable("HomogeneousBFS needs a homogeneous presentation")
        super().__init__(p)
        self._moves = _relation_moves(p)
        self._classes: Dict[Word, FrozenSet[Word]] = {}
        self._keys: Dict[FrozenSet[Word], Word] = {}

    def class_words(self, word: Sequence[str]) -> FrozenSet[Word]:
        word = tuple(word)
        cached = self._classes.get(word)
        if cached is not None:
            return cached
        cap = get_settings().max_states
        seen = {word}
        queue = deque([word])
        while queue:
            current = queue.popleft()
            for nxt in _neighbours(current, self._moves):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        raise CapExceeded(f"equivalence class of {format_word(word)} exceeds {cap} words")
                    queue.append(nxt)
        result = frozenset(seen)
        for member in result:
            self._classes[member] = result
        return result

    def key(self, word: Sequence[str]) -> Word:
        members = self.class_words(word)
        found = self._keys.get(members)
        if found is None:
            found = self._keys[members] = min(members, key=self.presentation.shortlex_key)
        return found

    def representative(self, word: Sequence[str]) -> Word:
        return self.key(word)

    def equal(self, u: Sequence[str], v: Sequence[str]) -> bool:
        u, v = tuple(u), tuple(v)
        if len(u) != len(v):
            return False
        return v in self.class_words(u)

    def left_remainders(self, u: Sequence[str], v: Sequence[str]) -> List[Word]:
        u, v = tuple(u), tuple(v)
        k = len(u)
        if k > len(v):
            return []
        found: Dict[Word, Word] = {}
        for word in self.class_words(v):
            if self.equal(word[:k], u):
                rest = self.key(word[k:])
                found.setdefault(rest, rest)
        return sorted(found.values(), key=self.presentation.shortlex_key)


class ConfluentRewriting(EqualityBackend):
    """Keys are normal forms of the shortlex-oriented relations."""

    kind = BackendKind.CONFLUENT_REWRITING

    def __init__(self, p: Presentation):
        if not p.classification.length_reducing_confluent:
            raise BackendInapplicable("ConfluentRewriting needs a confluent presentation")
        super().__init__(p)
        self.system = RewritingSystem.from_presentation(p)

    def key(self, word: Sequence[str]) -> Word:
        return self.system.reduce(word)

    def representative(self, word: Sequence[str]) -> Word:
        return self.system.reduce(word)


class _ReversingKey:
    """Key compared by double reversing; no canonical form is available."""

    __slots__ = ("backend", "word")

    def __init__(self, backend: "DoubleReversing", word: Word):
        self.backend = backend
        self.word = word

    def __eq__(self, other) -> bool:
        if not isinstance(other, _ReversingKey):
            return NotImplemented
        return self.backend.equal(self.word, other.word)

    def __hash__(self) -> int:
        return 0


class DoubleReversing(EqualityBackend):
    """u = v iff u^-1 v right-reverses to the empty word (complete, no invertibles)."""

    kind = BackendKind.DOUBLE_REVERSING

    def __init__(self, p: Presentation):
        from .reversing import completeness_check

        flags = p.classification
        if not flags.complemented or p.has_invertibles:
            raise BackendInapplicable(
                "DoubleReversing needs a complemented presentation without invertibles"
            )
        if not completeness_check(p).complete:
            raise BackendInapplicable("right reversing is not known to be complete here")
        super().__init__(p)

    def _reverse(self, u: Word, v: Word):
        from .reversing import Status, right_reverse

        outcome = right_reverse(self.presentation, negative_letters(u) + positive_letters(v))
        if outcome.status is Status.DIVERGED:
            raise Inconclusive(f"reversing {format_word(u)}^-1 {format_word(v)} diverged")
        return outcome

    def key(self, word: Sequence[str]) -> _ReversingKey:
        return _ReversingKey(self, tuple(word))

    def equal(self, u: Sequence[str], v: Sequence[str]) -> bool:
        outcome = self._reverse(tuple(u), tuple(v))
        return outcome.terminated and not outcome.positive and not outcome.negative

    def left_remainders(self, u: Sequence[str], v: Sequence[str]) -> List[Word]:
        outcome = self._reverse(tuple(u), tuple(v))
        if outcome.terminated and not outcome.negative:
            return [outcome.positive]
        return []


class BoundedSearch(EqualityBackend):
    """
    Breadth-first closure of relation applications over words no longer
    than a bound.

    A component that never met the bound is a whole equality class, so
    answers drawn from it are exact. A negative answer between two
    components that were both cut off raises Inconclusive.
    """

    kind = BackendKind.BOUNDED_SEARCH

    def __init__(self, p: Presentation, bound: int = 6):
        super().__init__(p)
        self.bound = bound
        self._moves = _relation_moves(p)
        self._components: Dict[Tuple[Word, int], FrozenSet[Word]] = {}
        self._truncated: Set[FrozenSet[Word]] = set()
        self.bound_hit = False

    def component(self, word: Sequence[str], bound: Optional[int] = None) -> FrozenSet[Word]:
        word = tuple(word)
        limit = max(bound or self.bound, len(word))
        cached = self._components.get((word, limit))
        if cached is not None:
            return cached
        cap = get_settings().max_states
        seen = {word}
        queue = deque([word])
        cut = False
        while queue:
            current = queue.popleft()
            for nxt in _neighbours(current, self._moves):
                if len(nxt) > limit:
                    cut = True
                    continue
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        raise CapExceeded(f"bounded search from {format_word(word)} exceeds {cap} words")
                    queue.append(nxt)
        result = frozenset(seen)
        if cut:
            self.bound_hit = True
            self._truncated.add(result)
        for member in result:
            self._components[(member, limit)] = result
        return result

    def is_truncated(self, word: Sequence[str], bound: Optional[int] = None) -> bool:
        """The component of word was cut off by the bound."""
        return self.component(word, bound) in self._truncated

    def key(self, word: Sequence[str]) -> Word:
        return min(self.component(word), key=self.presentation.shortlex_key)

    def representative(self, word: Sequence[str]) -> Word:
        return self.key(word)

    def equal(self, u: Sequence[str], v: Sequence[str]) -> bool:
        """
        Raises:
            Inconclusive: when u and v are not joined within the bound and
                neither component is a complete class
        """
        u, v = tuple(u), tuple(v)
        limit = max(self.bound, len(u), len(v))
        if v in self.component(u, limit):
            return True
        if self.is_truncated(u, limit) and self.is_truncated(v, limit):
            raise Inconclusive(
                f"{format_word(u)} and {format_word(v)} are not joined by words of "
                f"length <= {limit}; longer words were cut off"
            )
        return False

    def left_remainders(self, u: Sequence[str], v: Sequence[str]) -> List[Word]:
        """
        Raises:
            Inconclusive: when no remainder is found and some candidate
                could not be decided
        """
        u, v = tuple(u), tuple(v)
        found: Dict[Hashable, Word] = {}
        undecided = 0
        for candidate in ball(self, len(v) + get_settings().ball_slack):
            if candidate.key in found:
                continue
            try:
                if self.equal(u + candidate.word, v):
                    found[candidate.key] = candidate.word
            except Inconclusive:
                undecided += 1
        if not found and undecided:
            raise Inconclusive(
                f"whether {format_word(u)} left-divides {format_word(v)} is undecided "
                f"within length {self.bound} ({undecided} candidates cut off)"
            )
        return list(found.values())

    def mirror(self) -> "BoundedSearch":
        return BoundedSearch(self.presentation.mirror(), self.bound)


_BACKENDS = {
    BackendKind.HOMOGENEOUS_BFS: HomogeneousBFS,
    BackendKind.CONFLUENT_REWRITING: ConfluentRewriting,
    BackendKind.DOUBLE_REVERSING: DoubleReversing,
    BackendKind.BOUNDED_SEARCH: BoundedSearch,
}

PREFERENCE = (
    BackendKind.CONFLUENT_REWRITING,
    BackendKind.HOMOGENEOUS_BFS,
    BackendKind.DOUBLE_REVERSING,
)


@lru_cache(maxsize=128)
def make_backend(p: Presentation, kind: BackendKind) -> EqualityBackend:
    """Build (and cache) one backend of the given kind for p."""
    return _BACKENDS[kind](p)


def select_backend(p: Presentation, allow_bounded: bool = False) -> EqualityBackend:
    """
    Pick the first applicable backend: ConfluentRewriting, HomogeneousBFS,
    then DoubleReversing (and BoundedSearch when allowed).

    Raises:
        BackendInapplicable: when nothing applies
    """
    for kind in PREFERENCE:
        try:
            backend = make_backend(p, kind)
        except BackendInapplicable:
            continue
        logger.debug("using %s for %s", kind.value, p.name or "presentation")
        return backend
    if allow_bounded:
        return make_backend(p, BackendKind.BOUNDED_SEARCH)
    raise BackendInapplicable(
        f"no equality backend applies to {p.name or 'this presentation'}"
    )


@dataclass(frozen=True, eq=False)
class Element:
    """An element of the presented monoid: a word plus the backend judging it."""

    word: Word
    backend: EqualityBackend = field(repr=False)
    key: Hashable = field(repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.backend.presentation == other.backend.presentation and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __mul__(self, other: "Element") -> "Element":
        return self.backend.element(self.word + other.word)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_word(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word or self.backend.equal(self.word, ())


def _word(x) -> Word:
    return x.word if isinstance(x, Element) else tuple(x)


def equal(b: EqualityBackend, u, v) -> bool:
    """u = v in the monoid presented by b.presentation."""
    return b.equal(_word(u), _word(v))


def shortlex_sorted(b: EqualityBackend, elements: Iterable[Element]) -> List[Element]:
    return sorted(elements, key=lambda e: b.presentation.shortlex_key(e.word))


# ---------------------------------------------------------------------------
# balls and invertibles


def ball(b: EqualityBackend, radius: int, start: Sequence[str] = ()) -> List[Element]:
    """
    Elements reachable from start by right-multiplying at most radius generators.

    Args:
        b: backend
        radius: number of letters appended
        start: starting word (identity by default)

    Returns:
        Elements in breadth-first order, one per equality class

    Raises:
        CapExceeded: when more than GARSIDE_MAX_STATES classes are met
    """
    start = tuple(start)
    if not start and radius in b._ball_cache:
        return b._ball_cache[radius]
    p = b.presentation
    cap = get_settings().max_states
    first = b.element(start)
    seen = {first.key: first}
    layer = [first]
    for _ in range(radius):
        nxt_layer = []
        for elem in layer:
            for name in p.generator_names:
                if not p.composable(elem.word, name):
                    continue
                candidate = b.element(elem.word + (name,))
                if candidate.key not in seen:
                    seen[candidate.key] = candidate
                    nxt_layer.append(candidate)
                    if len(seen) > cap:
                        raise CapExceeded(f"ball of radius {radius} exceeds {cap} elements")
        layer = nxt_layer
        if not layer:
            break
    result = list(seen.values())
    if not start:
        b._ball_cache[radius] = result
    return result


def invertibles(b: EqualityBackend) -> List[Element]:
    """
    The group of invertible elements, generated by the invertible letters.

    Raises:
        InvariantViolation: when an invertible letter lacks a two-sided inverse
    """
    cache = getattr(b, "_invertibles", None)
    if cache is not None:
        return cache
    p = b.presentation
    letters = sorted(p.invertible_names, key=p.rank.get)
    identity = b.element(())
    group = {identity.key: identity}
    queue = deque([identity])
    cap = get_settings().max_states
    while queue:
        current = queue.popleft()
        for name in letters:
            candidate = b.element(current.word + (name,))
            if candidate.key not in group:
                group[candidate.key] = candidate
                if len(group) > cap:
                    raise CapExceeded("group of invertible elements looks infinite")
                queue.append(candidate)
    elements = list(group.values())
    for name in letters:
        if not any(
            b.equal((name,) + g.word, ()) and b.equal(g.word + (name,), ()) for g in elements
        ):
            raise InvariantViolation(f"{name} has no two-sided inverse")
    b._invertibles = elements
    return elements


def is_invertible(b: EqualityBackend, x) -> bool:
    word = _word(x)
    if not word:
        return True
    if any(name not in b.presentation.invertible_names for name in word):
        # a non-invertible letter can still vanish, e.g. with a relation a b = 1
        if not b.presentation.has_invertibles:
            return False
    key = b.key(word)
    return any(g.key == key for g in invertibles(b))


def eqir(b: EqualityBackend, f, g) -> bool:
    """f =~ g: g = f.e for some invertible e."""
    f, g = _word(f), _word(g)
    if not b.presentation.has_invertibles:
        return b.equal(f, g)
    return any(b.equal(f + e.word, g) for e in invertibles(b))


def eqir_key(b: EqualityBackend, f) -> Hashable:
    """Hashable key of the =~ class of f."""
    f = _word(f)
    if not b.presentation.has_invertibles:
        return b.key(f)
    return frozenset(b.key(f + e.word) for e in invertibles(b))


def _dedupe_eqir(b: EqualityBackend, elements: Iterable[Element]) -> List[Element]:
    best: Dict[Hashable, Element] = {}
    for elem in shortlex_sorted(b, elements):
        best.setdefault(eqir_key(b, elem), elem)
    return shortlex_sorted(b, best.values())


# ---------------------------------------------------------------------------
# divisibility


def left_quotient(b: EqualityBackend, u, v) -> Optional[Word]:
    """A word w with u.w = v, or None."""
    return b.left_quotient(_word(u), _word(v))


def right_quotient(b: EqualityBackend, u, v) -> Optional[Word]:
    """A word w with w.u = v, or None."""
    rest = b.mirror().left_quotient(tuple(reversed(_word(u))), tuple(reversed(_word(v))))
    return None if rest is None else tuple(reversed(rest))


def left_divides(b: EqualityBackend, u, v) -> bool:
    """u left-divides v: v = u.w for some w."""
    return left_quotient(b, u, v) is not None


def right_divides(b: EqualityBackend, u, v) -> bool:
    """u right-divides v: v = w.u for some w."""
    return right_quotient(b, u, v) is not None


def left_divisors(
    b: EqualityBackend, v, length_cap: Optional[int] = None, exact: bool = False
) -> List[Element]:
    """
    All left-divisors of v, one shortest representative per class.

    With invertible elements the classes are taken up to =~ unless exact.

    Args:
        b: backend
        v: word or Element
        length_cap: longest divisor searched on non-homogeneous backends
        exact: keep every equality class instead of =~ classes

    Returns:
        Elements sorted shortlex
    """
    v = _word(v)
    if isinstance(b, HomogeneousBFS):
        found = {}
        for word in b.class_words(v):
            for k in range(len(word) + 1):
                elem = b.element(word[:k])
                found.setdefault(elem.key, elem)
        divisors = list(found.values())
    else:
        radius = length_cap if length_cap is not None else len(v) + get_settings().ball_slack
        divisors = [d for d in ball(b, radius) if left_divides(b, d.word, v)]
    if b.presentation.has_invertibles and not exact:
        return _dedupe_eqir(b, divisors)
    return shortlex_sorted(b, divisors)


def right_divisors(
    b: EqualityBackend, v, length_cap: Optional[int] = None, exact: bool = False
) -> List[Element]:
    """All right-divisors of v, via the mirror backend."""
    mirror = b.mirror()
    reflected = left_divisors(mirror, tuple(reversed(_word(v))), length_cap, exact=True)
    found: Dict[Hashable, Element] = {}
    for d in reflected:
        elem = b.element(tuple(reversed(d.word)))
        found.setdefault(elem.key, elem)
    if b.presentation.has_invertibles and not exact:
        return _dedupe_eqir(b, found.values())
    return shortlex_sorted(b, found.values())


@dataclass(frozen=True)
class MCMSet:
    """Minimal common right-multiples found within search_bound."""

    elements: Tuple[Element, ...]
    search_bound: int
    method: str = "enumeration"
    cap_exceeded: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    def words(self) -> List[Word]:
        return [e.word for e in self.elements]


def _minimal(b: EqualityBackend, candidates: List[Element]) -> List[Element]:
    unique = _dedupe_eqir(b, candidates)
    minimal = []
    for c in unique:
        if not any(
            d is not c and not eqir(b, d, c) and left_divides(b, d.word, c.word) for d in unique
        ):
            minimal.append(c)
    return minimal


def _reversing_applies(b: EqualityBackend) -> bool:
    from .reversing import completeness_check

    p = b.presentation
    return not p.has_invertibles and completeness_check(p).complete


def right_mcms(b: EqualityBackend, u, v, bound: Optional[int] = None) -> MCMSet:
    """
    Minimal common right-multiples of u and v.

    When reversing is complete (and there are no invertibles) every terminal
    v'.u'^-1 of u^-1 v yields a candidate u.v' and the answer is exact;
    otherwise common multiples are enumerated up to bound letters
    (default |u| + |v|).

    Returns:
        MCMSet recording the bound and method used
    """
    from .reversing import Status, right_reverse

    u, v = _word(u), _word(v)
    bound = len(u) + len(v) if bound is None else bound
    if _reversing_applies(b):
        outcome = right_reverse(b.presentation, negative_letters(u) + positive_letters(v))
        if outcome.status is Status.STUCK:
            return MCMSet((), bound, "reversing")
        if outcome.terminated:
            candidates = [b.element(u + v_prime) for v_prime, _ in outcome.fractions()]
            return MCMSet(tuple(_minimal(b, candidates)), bound, "reversing")
        logger.warning("reversing %s diverged; enumerating common multiples", outcome.reason)

    capped = False
    try:
        region = ball(b, bound)
    except CapExceeded:
        capped = True
        region = ball(b, max(bound - 1, 0))
    common = [
        m for m in region if left_divides(b, u, m.word) and left_divides(b, v, m.word)
    ]
    return MCMSet(tuple(_minimal(b, common)), bound, "enumeration", capped)


def right_lcm(b: EqualityBackend, u, v) -> Optional[Element]:
    """
    Least common right-multiple of u and v.

    Returns:
        The lcm, or None when u and v have no common right-multiple

    Raises:
        NotUnique: when several non-equivalent mcms exist
        ReversingDiverged: when the reversing route diverges
    """
    from .reversing import theta_star

    u, v = _word(u), _word(v)
    if b.equal(u, v):
        return b.element(u)
    p = b.presentation
    if p.classification.complemented and _reversing_applies(b):
        complement = theta_star(p, u, v)
        return None if complement is None else b.element(u + complement)
    mcms = right_mcms(b, u, v)
    if not mcms.elements:
        return None
    first = mcms.elements[0]
    if all(eqir(b, first, other) for other in mcms.elements[1:]):
        return first
    raise NotUnique(
        f"{format_word(u)} and {format_word(v)} have {len(mcms)} right-mcms and no right-lcm",
        mcms.elements,
    )


def _maxima(b: EqualityBackend, elements: List[Element], divides) -> List[Element]:
    return [
        d
        for d in elements
        if not any(c is not d and not eqir(b, c, d) and divides(b, d.word, c.word) for c in elements)
    ]


def left_gcd(b: EqualityBackend, u, v) -> Element:
    """
    Greatest common left-divisor of u and v.

    Raises:
        NotUnique: when the common divisors have several maximal classes
    """
    u_divs = left_divisors(b, u)
    v_keys = {eqir_key(b, d) for d in left_divisors(b, v)}
    common = [d for d in u_divs if eqir_key(b, d) in v_keys]
    maxima = _maxima(b, common, left_divides)
    if len(maxima) != 1:
        raise NotUnique("common left-divisors have several maximal elements", maxima)
    return maxima[0]


def right_gcd(b: EqualityBackend, u, v, common_left_multiple=None) -> Optional[Element]:
    """
    Greatest common right-divisor of u and v.

    With a common left-multiple h = f.u = g.v the answer is m\\h where m is
    the right-lcm of f and g; otherwise right-divisor sets are intersected.

    Raises:
        NoCommonLeftMultiple: when the supplied h is not a common left-multiple
        NotUnique: when the common divisors have several maximal classes
    """
    u, v = _word(u), _word(v)
    if common_left_multiple is not None:
        h = _word(common_left_multiple)
        f = right_quotient(b, u, h)
        g = right_quotient(b, v, h)
        if f is None or g is None:
            raise NoCommonLeftMultiple(f"{format_word(h)} is not a left-multiple of both words")
        m = right_lcm(b, f, g)
        if m is None:
            return None
        d = left_quotient(b, m.word, h)
        return None if d is None else b.element(d)
    u_divs = right_divisors(b, u)
    v_keys = {eqir_key(b, d) for d in right_divisors(b, v)}
    common = [d for d in u_divs if eqir_key(b, d) in v_keys]
    maxima = _maxima(b, common, right_divides)
    if len(maxima) != 1:
        raise NotUnique("common right-divisors have several maximal elements", maxima)
    return maxima[0]


# ---------------------------------------------------------------------------
# atoms, height, cancellativity


def atoms(b: EqualityBackend) -> List[Element]:
    """
    Non-invertible elements whose non-invertible left-divisors are all =~ to them.

    Raises:
        NotNoetherian: when the presentation carries no Noetherianity certificate
    """
    p = b.presentation
    if not p.noetherian_certified:
        raise NotNoetherian(f"{p.name or 'presentation'} is not certified Noetherian")
    units = invertibles(b)
    found: Dict[Hashable, Element] = {}
    for name in p.generator_names:
        if name in p.invertible_names:
            continue
        for left in units:
            for right in units:
                candidate = b.element(left.word + (name,) + right.word)
                if candidate.key in found or is_invertible(b, candidate):
                    continue
                if all(
                    is_invertible(b, d) or eqir(b, d, candidate)
                    for d in left_divisors(b, candidate.word)
                ):
                    found[candidate.key] = candidate
    return shortlex_sorted(b, found.values())


def height(b: EqualityBackend, w) -> int:
    """Longest decomposition of w into non-invertible factors."""
    p = b.presentation
    if not p.noetherian_certified:
        raise NotNoetherian(f"{p.name or 'presentation'} is not certified Noetherian")
    memo: Dict[Hashable, int] = {}

    def h(word: Word) -> int:
        key = b.key(word)
        if key in memo:
            return memo[key]
        if is_invertible(b, word):
            memo[key] = 0
            return 0
        best = 1
        for d in left_divisors(b, word):
            if is_invertible(b, d) or eqir(b, d, word):
                continue
            rest = left_quotient(b, d.word, word)
            if rest is not None and not is_invertible(b, rest):
                best = max(best, h(d.word) + h(rest))
        memo[key] = best
        return best

    return h(_word(w))


@dataclass(frozen=True)
class CancellativityReport:
    weakly_right_cancellative: bool
    radius: int
    witness: Optional[Tuple[Word, Word]] = None


def weakly_right_cancellative(b: EqualityBackend, radius: int = 3) -> CancellativityReport:
    """Search the ball of the given radius for g.h = h with g non-invertible."""
    region = ball(b, radius)
    for g in region:
        if is_invertible(b, g):
            continue
        for h in region:
            if b.equal(g.word + h.word, h.word):
                return CancellativityReport(False, radius, (g.word, h.word))
    return CancellativityReport(True, radius)

