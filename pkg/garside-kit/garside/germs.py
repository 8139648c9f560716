"""
garside/germs.py

Germ tables: reading and writing the CSV format, germ axioms and flags,
the presented monoid of a germ, embedding tests, local divisibility, the
I- and J-families of a pair, subgerms and the divisor germ of a Garside
element.
"""

import csv
import io
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Dict, Iterable, List, Optional, Tuple

from .config import get_logger
from .divisibility import BackendKind, BoundedSearch, EqualityBackend, make_backend
from .errors import BackendInapplicable, CapExceeded, Inconclusive, MalformedTable
from .families import Submonoid
from .normal_forms import Family
from .presentation import NAME_PATTERN, Presentation, build_presentation

logger = get_logger(__name__)

IDENTITY = "1"


@dataclass
class GermTable:
    """A finite carrier with an identity and a partial product."""

    carrier: Tuple[str, ...]
    identity: str
    product: Dict[Tuple[str, str], str]
    name: str = ""

    def compose(self, s: str, t: str) -> Optional[str]:
        return self.product.get((s, t))

    def defined(self, s: str, t: str) -> bool:
        return (s, t) in self.product

    @property
    def non_identity(self) -> Tuple[str, ...]:
        return tuple(x for x in self.carrier if x != self.identity)

    def induced(self, subset: Iterable[str]) -> "GermTable":
        """Sub-table on subset (carrier order kept), products leaving it dropped."""
        keep = set(subset)
        carrier = tuple(x for x in self.carrier if x in keep)
        product = {
            (s, t): u for (s, t), u in self.product.items() if s in keep and t in keep and u in keep
        }
        return GermTable(carrier, self.identity, product, self.name)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([""] + list(self.carrier))
        for s in self.carrier:
            writer.writerow([s] + [self.product.get((s, t), "") for t in self.carrier])
        return buffer.getvalue()

    def to_dict(self) -> Dict:
        return {
            "carrier": list(self.carrier),
            "identity": self.identity,
            "products": {f"{s} {t}": u for (s, t), u in sorted(self.product.items())},
        }


def parse_germ(text: str, name: str = "") -> GermTable:
    """
    Read a germ table: first row and column carry the labels, an empty cell
    is an undefined product, and the label 1 is the identity.

    Raises:
        MalformedTable: on a missing identity, unknown labels or ragged rows
    """
    rows = [
        [cell.strip() for cell in row]
        for row in csv.reader(io.StringIO(text))
        if row and not row[0].lstrip().startswith("#")
    ]
    if not rows:
        raise MalformedTable("empty germ table")
    carrier = tuple(rows[0][1:])
    if len(set(carrier)) != len(carrier):
        raise MalformedTable("duplicate labels in the header row")
    if IDENTITY not in carrier:
        raise MalformedTable("germ table has no identity column labelled 1")
    for label in carrier:
        if label != IDENTITY and not NAME_PATTERN.match(label):
            raise MalformedTable(f"label {label!r} is not a valid generator name")
    product: Dict[Tuple[str, str], str] = {}
    seen_rows = set()
    for lineno, row in enumerate(rows[1:], start=2):
        label = row[0]
        if label not in carrier or label in seen_rows:
            raise MalformedTable(f"line {lineno}: unexpected row label {label!r}")
        seen_rows.add(label)
        if len(row) - 1 > len(carrier):
            raise MalformedTable(f"line {lineno}: more cells than labels")
        for column, cell in zip(carrier, row[1:]):
            if not cell:
                continue
            if cell not in carrier:
                raise MalformedTable(f"line {lineno}: {cell!r} is not in the carrier")
            product[(label, column)] = cell
    return GermTable(carrier, IDENTITY, product, name)


# ---------------------------------------------------------------------------
# flags


@dataclass(frozen=True)
class GermFlags:
    is_germ: bool
    left_associative: bool
    right_associative: bool
    left_cancellative: bool
    noetherian: Optional[bool]
    reasons: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {
            "isGerm": self.is_germ,
            "leftAssociative": self.left_associative,
            "rightAssociative": self.right_associative,
            "leftCancellative": self.left_cancellative,
            "noetherian": self.noetherian,
            "reasons": list(self.reasons),
        }


def germ_invertibles(t: GermTable) -> List[str]:
    """Elements s with s.u = u.s = 1 for some u."""
    return [
        s
        for s in t.carrier
        if any(t.compose(s, u) == t.identity and t.compose(u, s) == t.identity for u in t.carrier)
    ]


def local_divides(t: GermTable, s: str, u: str) -> bool:
    """s locally left-divides u: s.v = u for some v."""
    return any(t.compose(s, v) == u for v in t.carrier)


def _identity_failures(t: GermTable) -> List[str]:
    one = t.identity
    return [
        f"1 . {x} or {x} . 1 is not {x}"
        for x in t.carrier
        if t.compose(one, x) != x or t.compose(x, one) != x
    ]


def _is_noetherian(t: GermTable) -> bool:
    """Proper local left-divisibility has no cycle."""
    units = set(germ_invertibles(t))
    graph: Dict[str, set] = {x: set() for x in t.carrier}
    for (s, v), u in t.product.items():
        if v not in units:
            graph[u].add(s)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError:
        return False
    return True


def validate_germ(t: GermTable) -> GermFlags:
    """
    Check identity laws and the germ axiom: when r.s and s.t are defined,
    (r.s).t is defined iff r.(s.t) is, and then both agree.
    """
    reasons = _identity_failures(t)
    left_assoc = right_assoc = True
    for r in t.carrier:
        for s in t.carrier:
            rs = t.compose(r, s)
            for u in t.carrier:
                st = t.compose(s, u)
                left = t.compose(rs, u) if rs is not None else None
                right = t.compose(r, st) if st is not None else None
                if rs is not None and st is not None and left != right:
                    reasons.append(f"({r} . {s}) . {u} and {r} . ({s} . {u}) disagree")
                if left is not None and st is None:
                    left_assoc = False
                if right is not None and rs is None:
                    right_assoc = False
    left_cancel = True
    for s in t.carrier:
        images = [t.compose(s, u) for u in t.carrier if t.defined(s, u)]
        if len(images) != len(set(images)):
            left_cancel = False
    flags = GermFlags(
        is_germ=not reasons,
        left_associative=left_assoc,
        right_associative=right_assoc,
        left_cancellative=left_cancel,
        noetherian=_is_noetherian(t),
        reasons=tuple(reasons),
    )
    logger.info("germ %s: %s", t.name or "table", flags)
    return flags


# ---------------------------------------------------------------------------
# the presented monoid


def mon_from_germ(t: GermTable) -> Presentation:
    """
    Presentation with one generator per non-identity element and one
    relation s t = s.t per defined product (empty right side for 1).
    """
    relations = []
    for s in t.non_identity:
        for u in t.non_identity:
            value = t.compose(s, u)
            if value is None:
                continue
            rhs = () if value == t.identity else (value,)
            relations.append(((s, u), rhs))
    return build_presentation(t.non_identity, relations, name=t.name and f"Mon({t.name})")


def germ_backend(t: GermTable, bound: int = 6) -> EqualityBackend:
    """ConfluentRewriting on Mon(t) when it applies, else BoundedSearch."""
    p = mon_from_germ(t)
    try:
        return make_backend(p, BackendKind.CONFLUENT_REWRITING)
    except BackendInapplicable:
        logger.info("oriented germ relations are not confluent; bounded search to %d", bound)
        return BoundedSearch(p, bound)


@dataclass(frozen=True)
class EmbeddingVerdict:
    embeds: bool
    bound: int
    exact: bool
    witness: Optional[Tuple[str, str]] = None

    def __bool__(self) -> bool:
        return self.embeds

    def to_dict(self) -> Dict:
        data = {"embeds": self.embeds, "bound": self.bound, "exact": self.exact}
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


def embedding_test(t: GermTable, bound: int = 6) -> EmbeddingVerdict:
    """
    Decide whether distinct germ elements stay distinct in Mon(t).

    Raises:
        Inconclusive: when the equality search exceeds the state cap
    """
    b = germ_backend(t, bound)
    exact = b.kind is BackendKind.CONFLUENT_REWRITING
    word = {x: (() if x == t.identity else (x,)) for x in t.carrier}
    try:
        for i, x in enumerate(t.carrier):
            for y in t.carrier[i + 1 :]:
                if b.equal(word[x], word[y]):
                    logger.info("%s and %s collapse in the presented monoid", x, y)
                    return EmbeddingVerdict(False, bound, exact, (x, y))
    except CapExceeded as exc:
        raise Inconclusive(f"embedding test: {exc}") from exc
    return EmbeddingVerdict(True, bound, exact)


# ---------------------------------------------------------------------------
# greediness


def j_family(t: GermTable, s1: str, s2: str) -> List[str]:
    """Local left-divisors s of s2 such that s1.s is defined."""
    return [s for s in t.carrier if local_divides(t, s, s2) and t.defined(s1, s)]


def i_family(t: GermTable, s1: str, s2: str) -> List[str]:
    """Elements s1.s with s a local left-divisor of s2."""
    return [t.product[(s1, s)] for s in j_family(t, s1, s2)]


def normality_via_j(t: GermTable, s1: str, s2: str) -> bool:
    """(s1, s2) is normal iff every element of its J-family is invertible."""
    units = set(germ_invertibles(t))
    return all(s in units for s in j_family(t, s1, s2))


# ---------------------------------------------------------------------------
# subgerms


def subgerm_closure(t: GermTable, subset: Iterable[str]) -> GermTable:
    """Smallest sub-table containing subset and 1, closed under defined products."""
    members = set(subset) | {t.identity}
    changed = True
    while changed:
        changed = False
        for s in list(members):
            for u in list(members):
                value = t.compose(s, u)
                if value is not None and value not in members:
                    members.add(value)
                    changed = True
    return t.induced(members)


def right_quotient_closed(
    t: GermTable, subset: Iterable[str]
) -> Tuple[bool, Optional[Tuple[str, str, str]]]:
    """
    subset is closed under right-quotient in t: s and s.u in subset force u
    in subset. Returns (closed, (s, u, s.u) witness).
    """
    keep = set(subset)
    for s in t.carrier:
        if s not in keep:
            continue
        for u in t.carrier:
            value = t.compose(s, u)
            if value in keep and u not in keep:
                return False, (s, u, value)
    return True, None


def germ_eqir_closed(t: GermTable, subset: Iterable[str]) -> bool:
    """s in subset and e invertible force s.e in subset whenever defined."""
    keep = set(subset)
    units = germ_invertibles(t)
    return all(
        t.compose(s, e) in keep for s in keep for e in units if t.defined(s, e)
    )


def submonoid_eqir_closed(t: GermTable, subset: Iterable[str], radius: int = 3) -> bool:
    """The submonoid of Mon(t) generated by subset is closed under x -> x.e, e invertible."""
    b = germ_backend(t)
    gens = [(s,) for s in subset if s != t.identity]
    N = Submonoid(b, gens, radius)
    units = [(e,) for e in germ_invertibles(t) if e != t.identity]
    inner = [x for x in N.members if len(x.word) < radius]
    return all(b.element(x.word + e) in N for x in inner for e in units)


# ---------------------------------------------------------------------------
# divisor germs


def divisor_germ(b: EqualityBackend, delta) -> GermTable:
    """
    The germ of the divisors of delta: s.u is defined iff the product still
    divides delta.

    Raises:
        NotBounded: propagated when delta's divisors are not closed under duality
    """
    from .families import delta_structure

    structure = delta_structure(b, delta)
    divisors: Family = structure.divisors
    labels = {d.key: ("".join(d.word) or IDENTITY) for d in divisors}
    product: Dict[Tuple[str, str], str] = {}
    for s in divisors:
        for u in divisors:
            value = b.element(s.word + u.word)
            if value in divisors:
                product[(labels[s.key], labels[u.key])] = labels[value.key]
    carrier = tuple(labels[d.key] for d in divisors)
    name = f"Div({''.join(structure.delta.word)})"
    return GermTable(carrier, IDENTITY, product, name)
