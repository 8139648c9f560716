"""
garside/rc.py

RC-systems (X, <|) for set-theoretic Yang-Baxter solutions: the RC law,
bijectivity, the structure monoid, iterated complements, the lcm of a
subset, the I-structure map and parabolic subsets.

Tables are written row <| column.
"""

import csv
import io
from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .config import get_logger
from .divisibility import Element, select_backend, right_lcm
from .errors import InvariantViolation, MalformedTable, NotBijective
from .presentation import NAME_PATTERN, Presentation, Word, build_presentation

logger = get_logger(__name__)

ONE = None


@dataclass(frozen=True)
class RCSystem:
    """A finite carrier with a total operation, table[(r, s)] = r <| s."""

    carrier: Tuple[str, ...]
    table: Dict[Tuple[str, str], str]
    name: str = ""

    def __hash__(self) -> int:
        return hash((self.carrier, tuple(sorted(self.table.items())), self.name))

    def op(self, r: str, s: str) -> str:
        return self.table[(r, s)]

    @property
    def prefixed(self) -> bool:
        return any(label == "1" or not NAME_PATTERN.match(label) for label in self.carrier)

    def generator_name(self, label: str) -> str:
        """Generator token for a carrier label (all prefixed with x when one label would clash)."""
        return f"x{label}" if self.prefixed else label

    def label_of(self, name: str) -> str:
        return name[1:] if self.prefixed else name

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["<|"] + list(self.carrier))
        for r in self.carrier:
            writer.writerow([r] + [self.table[(r, s)] for s in self.carrier])
        return buffer.getvalue()

    def to_dict(self) -> Dict:
        return {
            "carrier": list(self.carrier),
            "table": [[self.table[(r, s)] for s in self.carrier] for r in self.carrier],
        }


def from_function(carrier: Sequence, op: Callable, name: str = "") -> RCSystem:
    """RCSystem whose table is op(r, s), labels taken with str()."""
    labels = tuple(str(x) for x in carrier)
    table = {
        (str(r), str(s)): str(op(r, s)) for r in carrier for s in carrier
    }
    return RCSystem(labels, table, name)


def cyclic_system(n: int, shift: int = 1) -> RCSystem:
    """Z/n with r <| s = s + shift."""
    return from_function(range(n), lambda r, s: (s + shift) % n, name=f"rc-cyclic-{n}")


def parse_rc(text: str, name: str = "") -> RCSystem:
    """
    Read an RC table: header row of labels (the corner cell is ignored),
    then one row per label with cell (r, s) = r <| s.

    Raises:
        MalformedTable: on unknown labels, missing cells or missing rows
    """
    rows = [
        [cell.strip() for cell in row]
        for row in csv.reader(io.StringIO(text))
        if row and not row[0].lstrip().startswith("#")
    ]
    if not rows:
        raise MalformedTable("empty RC table")
    carrier = tuple(rows[0][1:])
    if len(set(carrier)) != len(carrier) or not carrier:
        raise MalformedTable("header row needs distinct labels")
    table: Dict[Tuple[str, str], str] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        r = row[0]
        if r not in carrier:
            raise MalformedTable(f"line {lineno}: unexpected row label {r!r}")
        if len(row) - 1 != len(carrier):
            raise MalformedTable(f"line {lineno}: expected {len(carrier)} cells")
        for s, cell in zip(carrier, row[1:]):
            if cell not in carrier:
                raise MalformedTable(f"line {lineno}: {cell!r} is not in the carrier")
            table[(r, s)] = cell
    if len(table) != len(carrier) ** 2:
        raise MalformedTable("the operation must be total")
    return RCSystem(carrier, table, name)


# ---------------------------------------------------------------------------
# laws


@dataclass(frozen=True)
class RCReport:
    rc_law: bool
    left_translations_bijective: bool
    witness: Optional[Tuple[str, str, str]] = None

    @property
    def quasigroup(self) -> bool:
        return self.rc_law and self.left_translations_bijective

    def to_dict(self) -> Dict:
        data = {
            "rcLaw": self.rc_law,
            "leftTranslationsBijective": self.left_translations_bijective,
            "quasigroup": self.quasigroup,
        }
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


def validate_rc(x: RCSystem) -> RCReport:
    """Check (a<|b)<|(a<|c) = (b<|a)<|(b<|c) on every triple, and each row is a permutation."""
    witness = None
    for a, b, c in product(x.carrier, repeat=3):
        if x.op(x.op(a, b), x.op(a, c)) != x.op(x.op(b, a), x.op(b, c)):
            witness = (a, b, c)
            break
    bijective = all(
        len({x.op(a, b) for b in x.carrier}) == len(x.carrier) for a in x.carrier
    )
    return RCReport(witness is None, bijective, witness)


@dataclass(frozen=True)
class DoubleBijectivity:
    diagonal_bijective: bool
    pair_map_bijective: bool

    def to_dict(self) -> Dict:
        return {"doubleBij": self.diagonal_bijective, "DoubleBij": self.pair_map_bijective}


def double_bijectivity(x: RCSystem) -> DoubleBijectivity:
    """
    Bijectivity of a -> a<|a and of (a, b) -> (a<|b, b<|a).

    Raises:
        InvariantViolation: when the two disagree on an RC-quasigroup
    """
    diagonal = {x.op(a, a) for a in x.carrier}
    pairs = {(x.op(a, b), x.op(b, a)) for a in x.carrier for b in x.carrier}
    result = DoubleBijectivity(
        len(diagonal) == len(x.carrier), len(pairs) == len(x.carrier) ** 2
    )
    if validate_rc(x).quasigroup and result.diagonal_bijective != result.pair_map_bijective:
        raise InvariantViolation(
            f"{x.name or 'RC-quasigroup'}: diagonal and pair map disagree on bijectivity"
        )
    return result


def parabolic_check(x: RCSystem, I: Iterable[str]) -> bool:
    """I is closed under <|."""
    subset = set(I)
    return all(x.op(a, b) in subset for a in subset for b in subset)


def row_permutation_systems(n: int) -> Iterator[RCSystem]:
    """
    Every RC-quasigroup on {0..n-1} whose rows are permutations.

    Rows are chosen one at a time; a partial table is dropped as soon as a
    triple whose four rows are already chosen breaks the RC law.
    """
    carrier = tuple(str(i) for i in range(n))
    rows = list(permutations(range(n)))

    def consistent(chosen: List[Tuple[int, ...]]) -> bool:
        k = len(chosen)
        for a in range(k):
            for b in range(k):
                ab, ba = chosen[a][b], chosen[b][a]
                if ab >= k or ba >= k:
                    continue
                if any(chosen[ab][chosen[a][c]] != chosen[ba][chosen[b][c]] for c in range(n)):
                    return False
        return True

    def extend(chosen: List[Tuple[int, ...]]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        if len(chosen) == n:
            yield tuple(chosen)
            return
        for row in rows:
            chosen.append(row)
            if consistent(chosen):
                yield from extend(chosen)
            chosen.pop()

    for choice in extend([]):
        table = {
            (r, s): carrier[choice[i][j]] for i, r in enumerate(carrier) for j, s in enumerate(carrier)
        }
        yield RCSystem(carrier, table)


# ---------------------------------------------------------------------------
# structure monoid


def structure_monoid(x: RCSystem) -> Presentation:
    """Generators X, relations r (r<|s) = s (s<|r) for r != s."""
    gen = x.generator_name
    relations = []
    for i, r in enumerate(x.carrier):
        for s in x.carrier[i + 1 :]:
            relations.append(((gen(r), gen(x.op(r, s))), (gen(s), gen(x.op(s, r)))))
    return build_presentation(
        [gen(label) for label in x.carrier], relations, name=x.name and f"M({x.name})"
    )


def complement_of_element(x: RCSystem, f: Sequence[str], t: str) -> Optional[str]:
    """
    f\\t in X u {1} (None standing for 1): empty f gives t, s\\s = 1,
    s\\t = s<|t, and f = g s gives s\\(g\\t).
    """
    current: Optional[str] = t
    for s in f:
        if current is ONE:
            return ONE
        current = ONE if current == s else x.op(s, current)
    return current


@dataclass(frozen=True)
class ComplementProfile:
    values: Dict[str, Optional[str]]
    distinct: bool
    ones: int


def complement_profile(x: RCSystem, f: Sequence[str]) -> ComplementProfile:
    """
    The map t -> f\\t, with its non-identity values pairwise distinct and at
    most |f| identities.

    Raises:
        InvariantViolation: when either property fails on an RC-quasigroup
    """
    values = {t: complement_of_element(x, f, t) for t in x.carrier}
    others = [v for v in values.values() if v is not ONE]
    ones = len(values) - len(others)
    profile = ComplementProfile(values, len(others) == len(set(others)), ones)
    if (not profile.distinct or ones > len(f)) and validate_rc(x).quasigroup:
        raise InvariantViolation(f"complements of {' '.join(f)} are not distinct")
    return profile


def delta_i(x: RCSystem, I: Iterable[str]) -> Element:
    """
    Right-lcm of the generators in I, built one generator at a time.

    Raises:
        InvariantViolation: when the lcm does not have length |I|
    """
    subset = [label for label in x.carrier if label in set(I)]
    b = select_backend(structure_monoid(x))
    gen = x.generator_name
    if not subset:
        return b.element(())
    lcm = b.element((gen(subset[0]),))
    for label in subset[1:]:
        step = right_lcm(b, lcm, (gen(label),))
        if step is None:
            raise InvariantViolation(f"{lcm} and {gen(label)} have no common right-multiple")
        lcm = step
    if len(lcm.word) != len(subset):
        raise InvariantViolation(f"lcm of {subset} has length {len(lcm.word)}")
    return lcm


# ---------------------------------------------------------------------------
# the I-structure map


def act(x: RCSystem, word: Sequence[str], t: str) -> str:
    """
    Action of a word of labels on X, each letter r sending t to r<|t.

    Letters act from left to right: (u v) acting on t is v acting on
    (u acting on t), so act(x, [r, s], t) = s<|(r<|t).
    """
    for r in word:
        t = x.op(r, t)
    return t


@dataclass(frozen=True)
class NuValue:
    element: Element
    orders_checked: int
    order_independent: bool

    def to_dict(self) -> Dict:
        return {
            "element": str(self.element),
            "ordersChecked": self.orders_checked,
            "orderIndependent": self.order_independent,
        }


def _nu_word(x: RCSystem, order: Sequence[str]) -> Word:
    """Generators nu(w s) = nu(w).(nu(w) acting on s), the prefix acting first letter first."""
    labels: List[str] = []
    for s in order:
        labels.append(act(x, labels, s))
    return tuple(x.generator_name(label) for label in labels)


def nu_map(x: RCSystem, multiset: Dict[str, int], max_orders: int = 120) -> NuValue:
    """
    nu(w s) = nu(w).(nu(w) acting on s), evaluated along every distinct
    ordering of the multiset (up to max_orders) and compared.

    Raises:
        NotBijective: when x is not a bijective RC-quasigroup
    """
    if not validate_rc(x).quasigroup or not double_bijectivity(x).pair_map_bijective:
        raise NotBijective(f"{x.name or 'RC-system'} is not a bijective RC-quasigroup")
    b = select_backend(structure_monoid(x))
    letters = [label for label in x.carrier for _ in range(multiset.get(label, 0))]
    orders: List[Tuple[str, ...]] = []
    seen = set()
    for order in permutations(letters):
        if order not in seen:
            seen.add(order)
            orders.append(order)
            if len(orders) >= max_orders:
                break
    if not orders:
        orders = [()]
    first = b.element(_nu_word(x, orders[0]))
    independent = True
    for order in orders[1:]:
        if not b.equal(first.word, _nu_word(x, order)):
            logger.warning("nu depends on the order: %s vs %s", orders[0], order)
            independent = False
    return NuValue(first, len(orders), independent)
