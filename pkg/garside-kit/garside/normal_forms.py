"""
garside/normal_forms.py

Families, greedy pairs, heads and S-normal decompositions; left
multiplication by domino renormalization, powers of a family, symmetric
normal decompositions of fractions, deformations and canonical length.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .config import get_logger
from .divisibility import (
    Element,
    EqualityBackend,
    ball,
    eqir,
    invertibles,
    is_invertible,
    left_divides,
    left_divisors,
    left_quotient,
    right_lcm,
    shortlex_sorted,
)
from .errors import (
    Inconclusive,
    InvariantViolation,
    NoHead,
    NotExpressible,
    NotLeftDisjoint,
    NotUnique,
    ReversingDiverged,
)
from .presentation import SignedWord, Word, format_word, negative_letters, positive_letters

logger = get_logger(__name__)


@dataclass(frozen=True)
class ClosureFlags:
    """None means "not checked"; flags are never set without a check."""

    right_divisor_closed: Optional[bool] = None
    right_mcm_closed: Optional[bool] = None
    right_comultiple_closed: Optional[bool] = None


class Family:
    """
    A finite family S of elements, with S# = S.C* u C* available on demand
    (C* being the invertible elements).
    """

    def __init__(
        self,
        backend: EqualityBackend,
        elements: Iterable,
        flags: Optional[ClosureFlags] = None,
        name: str = "",
    ):
        self.backend = backend
        unique: Dict[Hashable, Element] = {}
        for x in elements:
            elem = x if isinstance(x, Element) else backend.element(x)
            unique.setdefault(elem.key, elem)
        self.elements: Tuple[Element, ...] = tuple(shortlex_sorted(backend, unique.values()))
        self.keys = frozenset(unique)
        self.flags = flags or ClosureFlags()
        self.name = name

    @classmethod
    def from_text(cls, backend: EqualityBackend, text: str, name: str = "") -> "Family":
        """Family from "a b; a' b'; 1" (semicolon- or comma-separated words)."""
        chunks = [c for c in text.replace(",", ";").split(";") if c.strip()]
        return cls(backend, [backend.presentation.word(c) for c in chunks], name=name)

    def __contains__(self, x) -> bool:
        word = x.word if isinstance(x, Element) else tuple(x)
        return self.backend.key(word) in self.keys

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def sharp(self) -> "Family":
        units = invertibles(self.backend)
        members = [s * e for s in self.elements for e in units] + list(units)
        return Family(self.backend, members, name=f"{self.name}#")

    def in_sharp(self, x) -> bool:
        return x in self.sharp

    def words(self) -> List[Word]:
        return [e.word for e in self.elements]

    def to_dict(self) -> List[str]:
        return sorted(format_word(w) for w in self.words())

    def __repr__(self) -> str:
        return f"Family({', '.join(format_word(w) for w in self.words())})"


@dataclass(frozen=True)
class NormalPath:
    """
    Entries of an S-normal decomposition; `invertible` carries the element
    of an invertible-only input (the path itself is then empty).
    """

    entries: Tuple[Element, ...]
    strict: bool
    family: Family = field(repr=False, compare=False)
    invertible: Optional[Element] = None

    def __len__(self) -> int:
        return len(self.entries)

    def words(self) -> List[Word]:
        return [e.word for e in self.entries]

    def product(self) -> Element:
        word: Word = ()
        for e in self.entries:
            word += e.word
        if self.invertible is not None:
            word += self.invertible.word
        return self.family.backend.element(word)

    def __str__(self) -> str:
        return "(" + ", ".join(format_word(w) for w in self.words()) + ")"

    def to_dict(self) -> Dict:
        data = {"entries": [format_word(w) for w in self.words()], "strict": self.strict}
        if self.invertible is not None:
            data["invertible"] = format_word(self.invertible.word)
        return data


@dataclass(frozen=True)
class SymmetricNormalPath:
    """Represents negative^-1 . positive."""

    negative: NormalPath
    positive: NormalPath

    def __str__(self) -> str:
        return f"{self.negative} | {self.positive}"

    def to_dict(self) -> Dict:
        return {"negative": self.negative.to_dict(), "positive": self.positive.to_dict()}


def _elem(S: Family, x) -> Element:
    return x if isinstance(x, Element) else S.backend.element(x)


# ---------------------------------------------------------------------------
# greedy pairs and heads


def is_greedy_pair(S: Family, s1, s2) -> bool:
    """
    (s1, s2) is S-greedy: every t in S# with t | f.s1.s2 satisfies t | f.s1,
    for every invertible f.

    Args:
        S: family
        s1, s2: elements or words

    Returns:
        bool
    """
    b = S.backend
    s1, s2 = _elem(S, s1), _elem(S, s2)
    if s2.is_identity:
        return True
    for f in invertibles(b):
        left = f.word + s1.word
        whole = left + s2.word
        for t in S.sharp:
            if left_divides(b, t.word, whole) and not left_divides(b, t.word, left):
                return False
    return True


def _lcm_below(b: EqualityBackend, x: Element, t: Element, g: Element) -> Element:
    """
    Right-lcm of x and t among the left-divisors of g: the global lcm, or
    else the only right-mcm of x and t that still divides g.
    """
    try:
        lcm = right_lcm(b, x.word, t.word)
    except NotUnique as exc:
        below = [m for m in exc.candidates if left_divides(b, m.word, g.word)]
        if len(below) != 1:
            raise NoHead(
                f"{x} and {t} have {len(below)} right-mcms dividing {g}; their lcm is not defined"
            ) from exc
        return below[0]
    if lcm is None:
        raise NoHead(f"{x} and {t} divide {g} but no common right-multiple was found")
    return lcm


def head(S: Family, g) -> Element:
    """
    The S-head of g: the right-lcm of the S#-divisors of g, when it lies in
    S#. Elements of S are preferred among equivalent heads, then shorter ones.

    Divisors are folded longest first, so a divisor already below the
    running lcm costs one divisibility test.

    Raises:
        NoHead: when the lcm is not defined or falls outside S#
    """
    b = S.backend
    g = _elem(S, g)
    candidates = [t for t in S.sharp if left_divides(b, t.word, g.word)]
    candidates.sort(key=lambda t: (-len(t.word), t not in S, b.presentation.shortlex_key(t.word)))
    lcm = candidates[0] if candidates else b.element(())
    for t in candidates[1:]:
        if not left_divides(b, t.word, lcm.word):
            lcm = _lcm_below(b, lcm, t, g)
    heads = [h for h in candidates if eqir(b, h, lcm)]
    if not heads:
        raise NoHead(f"the lcm {lcm} of the family divisors of {g} is not in the family")
    heads.sort(key=lambda h: (h not in S, b.presentation.shortlex_key(h.word)))
    return heads[0]


def _is_strict(S: Family, entries: Sequence[Element]) -> bool:
    b = S.backend
    if any(is_invertible(b, e) for e in entries):
        return False
    return all(e in S for e in entries[:-1])


def _make_path(S: Family, entries: List[Element], rest: Optional[Element]) -> NormalPath:
    invertible = None
    if rest is not None and not rest.is_identity:
        if entries:
            entries[-1] = entries[-1] * rest
        else:
            invertible = rest
    return NormalPath(tuple(entries), _is_strict(S, entries), S, invertible)


def normal_decomposition(S: Family, g) -> NormalPath:
    """
    Strict S-normal decomposition of g by head iteration.

    A trailing invertible is folded into the last entry; an invertible g
    gives the empty path carrying that invertible.

    Raises:
        NoHead: propagated from head()
    """
    b = S.backend
    g = _elem(S, g)
    entries: List[Element] = []
    current = g
    limit = 4 * len(g.word) + 4
    while not is_invertible(b, current):
        h = head(S, current)
        rest = left_quotient(b, h.word, current.word)
        if rest is None or is_invertible(b, h):
            raise NoHead(f"head iteration on {g} made no progress")
        entries.append(h)
        current = b.element(rest)
        if len(entries) > limit:
            raise InvariantViolation(f"head iteration on {g} does not terminate")
    return _make_path(S, entries, current)


def left_multiply_normal(S: Family, s, np: NormalPath) -> NormalPath:
    """
    Normal decomposition of s.g from one of g, renormalizing length-two
    windows from left to right (the first domino rule).
    """
    b = S.backend
    s = _elem(S, s)
    if s.is_identity:
        return np
    carry = s
    entries: List[Element] = []
    for entry in np.entries:
        pair = carry * entry
        if is_invertible(b, pair):
            carry = pair
            continue
        h = head(S, pair)
        rest = left_quotient(b, h.word, pair.word)
        if rest is None:
            raise NoHead(f"cannot renormalize the pair ({carry}, {entry})")
        entries.append(h)
        carry = b.element(rest)
    if np.invertible is not None:
        carry = carry * np.invertible
    if not is_invertible(b, carry):
        tail = normal_decomposition(S, carry)
        entries.extend(tail.entries)
        carry = tail.invertible
    return _make_path(S, entries, carry)


# ---------------------------------------------------------------------------
# powers


def power_family(S: Family, m: int) -> Family:
    """S^m: products of at most m elements of S."""
    b = S.backend
    members = [b.element(())]
    for k in range(1, m + 1):
        for combo in product(S.elements, repeat=k):
            word: Word = ()
            for e in combo:
                word += e.word
            members.append(b.element(word))
    return Family(b, members, name=f"{S.name}^{m}")


def group_power(np: NormalPath, m: int, Sm: Optional[Family] = None) -> NormalPath:
    """Group consecutive blocks of m entries into single entries of S^m."""
    b = np.family.backend
    Sm = Sm or power_family(np.family, m)
    grouped = []
    for i in range(0, len(np.entries), m):
        word: Word = ()
        for e in np.entries[i : i + m]:
            word += e.word
        grouped.append(b.element(word))
    return NormalPath(tuple(grouped), _is_strict(Sm, grouped), Sm, np.invertible)


def power_normal(
    S: Family,
    m: int,
    np: NormalPath,
    pieces: Optional[Sequence[NormalPath]] = None,
) -> NormalPath:
    """
    Turn an S^m-normal path into an S-normal path by concatenating S-normal
    decompositions of its entries.

    Args:
        S: family
        m: power
        np: S^m-normal path
        pieces: S-normal decompositions of the entries (computed when omitted)

    Returns:
        NormalPath over S

    Raises:
        ValueError: when np is not S^m-normal
        InvariantViolation: when the concatenation is not S-normal
    """
    Sm = power_family(S, m)
    for first, second in zip(np.entries, np.entries[1:]):
        if not is_greedy_pair(Sm, first, second):
            raise ValueError(f"({first}, {second}) is not greedy for the family raised to {m}")
    if pieces is None:
        pieces = [normal_decomposition(S, e) for e in np.entries]
    entries: List[Element] = []
    rest = None
    for piece in pieces:
        if rest is not None and not rest.is_identity:
            raise InvariantViolation("an invertible piece sits inside the path")
        entries.extend(piece.entries)
        rest = piece.invertible
    for first, second in zip(entries, entries[1:]):
        if not is_greedy_pair(S, first, second):
            raise InvariantViolation(f"junction ({first}, {second}) is not greedy")
    return _make_path(S, entries, rest)


# ---------------------------------------------------------------------------
# fractions


def left_disjoint(b: EqualityBackend, f, g, radius: int = 2) -> bool:
    """
    f and g are left-disjoint: their common left-divisors are invertible and,
    for every h of the test ball, every common left-divisor of h.f and h.g
    left-divides h.

    Raises:
        Inconclusive: when the divisor sets cannot be enumerated
    """
    f = f.word if isinstance(f, Element) else tuple(f)
    g = g.word if isinstance(g, Element) else tuple(g)

    def common(x: Word, y: Word) -> List[Element]:
        y_divisors = left_divisors(b, y)
        return [d for d in left_divisors(b, x) if any(eqir(b, d, e) for e in y_divisors)]

    try:
        if any(not is_invertible(b, d) for d in common(f, g)):
            disjoint = False
        else:
            disjoint = all(
                left_divides(b, d.word, h.word)
                for h in ball(b, radius)
                for d in common(h.word + f, h.word + g)
            )
    except ReversingDiverged as exc:
        raise Inconclusive(str(exc)) from exc
    if disjoint and left_divides(b, f, g) and not is_invertible(b, f):
        raise InvariantViolation("left-disjoint pair with a non-invertible divisor relation")
    return disjoint


def symmetric_normal(S: Family, u, v) -> SymmetricNormalPath:
    """
    Symmetric S-normal decomposition of the fraction v.u^-1.

    Left-reverses v.u^-1 into u''^-1 v'' (so u''.v = v''.u), decomposes both
    numerators and checks their first entries are left-disjoint.

    Raises:
        ReversingDiverged: when left reversing does not terminate
        Inconclusive: when left reversing gets stuck
        NotLeftDisjoint: when the family is not strong enough
    """
    from .reversing import Status, left_reverse

    b = S.backend
    p = b.presentation
    u = u.word if isinstance(u, Element) else tuple(u)
    v = v.word if isinstance(v, Element) else tuple(v)
    outcome = left_reverse(p, positive_letters(v) + negative_letters(u))
    if outcome.status is Status.DIVERGED:
        raise ReversingDiverged(outcome)
    if outcome.status is Status.STUCK:
        raise Inconclusive(f"{format_word(u)} and {format_word(v)} have no common left-multiple")
    negative = normal_decomposition(S, outcome.negative)
    positive = normal_decomposition(S, outcome.positive)
    if negative.entries and positive.entries:
        if not left_disjoint(b, negative.entries[0], positive.entries[0]):
            raise NotLeftDisjoint(
                f"{negative.entries[0]} and {positive.entries[0]} are not left-disjoint"
            )
    return SymmetricNormalPath(negative, positive)


def is_deformation(b: EqualityBackend, path1: Sequence, path2: Sequence) -> bool:
    """
    The two paths are deformations of each other: partial products agree up
    to right-multiplication by invertibles, and the full products are equal.
    """
    first = [x.word if isinstance(x, Element) else tuple(x) for x in path1]
    second = [x.word if isinstance(x, Element) else tuple(x) for x in path2]
    size = max(len(first), len(second))
    first += [()] * (size - len(first))
    second += [()] * (size - len(second))
    left: Word = ()
    right: Word = ()
    for x, y in zip(first, second):
        left += x
        right += y
        if not eqir(b, left, right):
            return False
    return b.equal(left, right)


# ---------------------------------------------------------------------------
# canonical length


def delta_lift(D, g: SignedWord) -> Tuple[int, Word]:
    """
    Write g as Delta^-k . P with P positive.

    Each negative letter s^-1 is replaced by dual(s).Delta^-1 and the Delta^-1
    is pushed left through phi^-1.

    Raises:
        NotExpressible: when a letter is not a divisor of Delta
    """
    k = 0
    P: Word = ()
    for letter in g.letters:
        if letter.positive:
            P += (letter.name,)
            continue
        dual = D.dual_of((letter.name,))
        if dual is None:
            raise NotExpressible(f"{letter.name} does not divide the Garside element")
        P = D.phi_inverse_word(P + dual.word)
        k += 1
    return k, P


def canonical_length(D, g: SignedWord) -> int:
    """
    Number of entries different from Delta in the Delta-normal form of the
    positive lift of g; Delta-powers have canonical length 0.
    """
    _, P = delta_lift(D, g)
    path = normal_decomposition(D.divisors, P)
    return sum(1 for e in path.entries if e != D.delta)


def canonical_distance(D, g: SignedWord, h: SignedWord) -> int:
    """Quasi-distance CAN(g^-1 h)."""
    joined = SignedWord(g.inverse().letters + h.letters, g.target, h.target)
    return canonical_length(D, joined)
