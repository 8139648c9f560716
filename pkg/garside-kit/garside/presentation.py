"""
garside/presentation.py

Objects, generators, signed words and presentations: the data model, the
text format parser/serializer and the structural classification flags.
"""

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .config import get_logger
from .errors import (
    PresentationSyntaxError,
    SourceTargetMismatch,
    UndeclaredGenerator,
)

logger = get_logger(__name__)

Word = Tuple[str, ...]

DEFAULT_OBJECT = "•"
NAME_PATTERN = re.compile(r"^[A-Za-z0-9_]+'*$")
INVERSE_SUFFIXES = ("^-1", "⁻¹")
KEYS = ("objects", "gens", "invertible", "rels")


@dataclass(frozen=True)
class Generator:
    name: str
    source: str = DEFAULT_OBJECT
    target: str = DEFAULT_OBJECT
    declared_invertible: bool = False


@dataclass(frozen=True)
class Letter:
    """A generator name with a sign: +1 for s, -1 for s^-1."""

    name: str
    sign: int = 1

    @property
    def positive(self) -> bool:
        return self.sign > 0

    def inverse(self) -> "Letter":
        return Letter(self.name, -self.sign)

    def __str__(self) -> str:
        return self.name if self.sign > 0 else f"{self.name}^-1"


@dataclass(frozen=True)
class SignedWord:
    letters: Tuple[Letter, ...]
    source: str = DEFAULT_OBJECT
    target: str = DEFAULT_OBJECT

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    @property
    def is_positive(self) -> bool:
        return all(letter.positive for letter in self.letters)

    @property
    def is_negative(self) -> bool:
        return all(not letter.positive for letter in self.letters)

    def names(self) -> Word:
        return tuple(letter.name for letter in self.letters)

    def inverse(self) -> "SignedWord":
        return SignedWord(
            tuple(letter.inverse() for letter in reversed(self.letters)),
            self.target,
            self.source,
        )


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"


@dataclass(frozen=True)
class ClassificationReport:
    complemented: bool
    homogeneous: bool
    triangular: bool
    length_reducing_confluent: bool

    def to_dict(self) -> Dict[str, bool]:
        return {
            "complemented": self.complemented,
            "homogeneous": self.homogeneous,
            "triangular": self.triangular,
            "lengthReducingConfluent": self.length_reducing_confluent,
        }


def format_word(word: Sequence[str]) -> str:
    """Space-separated generator names, "1" for the empty word."""
    return " ".join(word) if word else "1"


def format_letters(letters: Sequence[Letter]) -> str:
    return " ".join(str(letter) for letter in letters) if letters else "1"


def positive_letters(word: Sequence[str]) -> Tuple[Letter, ...]:
    return tuple(Letter(name, 1) for name in word)


def negative_letters(word: Sequence[str]) -> Tuple[Letter, ...]:
    """Letters of word^-1, i.e. the reversed word with every sign flipped."""
    return tuple(Letter(name, -1) for name in reversed(word))


@dataclass(frozen=True)
class Presentation:
    """
    A finite category (or monoid) presentation.

    Attributes:
        objects: declared object names, DEFAULT_OBJECT for monoids
        generators: generators in declaration order (this order ranks them)
        relations: relations in file order
        name: display label, ignored by equality
    """

    objects: Tuple[str, ...]
    generators: Tuple[Generator, ...]
    relations: Tuple[Relation, ...]
    name: str = field(default="", compare=False)

    @cached_property
    def generator_names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    @cached_property
    def rank(self) -> Dict[str, int]:
        return {g.name: i for i, g in enumerate(self.generators)}

    @cached_property
    def by_name(self) -> Dict[str, Generator]:
        return {g.name: g for g in self.generators}

    @cached_property
    def invertible_names(self) -> FrozenSet[str]:
        """Declared invertibles plus every letter of a relation w = 1."""
        names = {g.name for g in self.generators if g.declared_invertible}
        for rel in self.relations:
            if not rel.lhs:
                names.update(rel.rhs)
            if not rel.rhs:
                names.update(rel.lhs)
        return frozenset(names)

    @property
    def has_invertibles(self) -> bool:
        return bool(self.invertible_names)

    @property
    def is_monoid(self) -> bool:
        return len(self.objects) == 1

    @cached_property
    def classification(self) -> ClassificationReport:
        return classify(self)

    @cached_property
    def noetherian_certified(self) -> bool:
        """
        Right-Noetherianity certificate.

        Holds when every relation has the same number of non-invertible
        letters on both sides (the count is then an additive height bound),
        or when the presentation is triangular and complemented.
        """
        invertible = self.invertible_names

        def weight(word: Word) -> int:
            return sum(1 for x in word if x not in invertible)

        if all(weight(r.lhs) == weight(r.rhs) for r in self.relations):
            return True
        flags = self.classification
        return flags.triangular and flags.complemented

    def shortlex_key(self, word: Sequence[str]) -> Tuple[int, Tuple[int, ...]]:
        rank = self.rank
        return (len(word), tuple(rank[x] for x in word))

    def composable(self, word: Sequence[str], name: str) -> bool:
        """True when the generator can be appended to the positive word."""
        if not word:
            return True
        return self.by_name[word[-1]].target == self.by_name[name].source

    def mirror(self) -> "Presentation":
        """The opposite presentation: sides reversed, sources and targets swapped."""
        return Presentation(
            objects=self.objects,
            generators=tuple(
                Generator(g.name, g.target, g.source, g.declared_invertible)
                for g in self.generators
            ),
            relations=tuple(
                Relation(tuple(reversed(r.lhs)), tuple(reversed(r.rhs)))
                for r in self.relations
            ),
            name=f"{self.name}~" if self.name else "",
        )

    def signed(self, text: str) -> SignedWord:
        return parse_signed_word(self, text)

    def word(self, text: str) -> Word:
        return parse_word(self, text)

    def serialize(self) -> str:
        return serialize_presentation(self)


# ---------------------------------------------------------------------------
# classification


def classify(p: Presentation) -> ClassificationReport:
    """
    Compute the structural flags of a presentation.

    Args:
        p: presentation to inspect

    Returns:
        ClassificationReport; deterministic and side-effect free
    """
    from .rewriting import RewritingSystem

    relations = p.relations
    homogeneous = all(len(r.lhs) == len(r.rhs) for r in relations)
    triangular = all(len(r.lhs) == 1 or len(r.rhs) == 1 for r in relations)

    complemented = True
    seen_pairs = set()
    for rel in relations:
        if not rel.lhs or not rel.rhs or rel.lhs[0] == rel.rhs[0]:
            complemented = False
            break
        pair = frozenset((rel.lhs[0], rel.rhs[0]))
        if pair in seen_pairs:
            complemented = False
            break
        seen_pairs.add(pair)

    confluent = RewritingSystem.from_presentation(p).is_confluent()
    return ClassificationReport(
        complemented=complemented,
        homogeneous=homogeneous,
        triangular=triangular,
        length_reducing_confluent=confluent,
    )


# ---------------------------------------------------------------------------
# parsing


def _normalize(text: str) -> str:
    return text.replace("′", "'").replace("’", "'")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _tokens_with_columns(text: str, offset: int) -> List[Tuple[str, int]]:
    return [(m.group(0), offset + m.start() + 1) for m in re.finditer(r"\S+", text)]


def _check_name(name: str, line: int, column: int) -> str:
    if not NAME_PATTERN.match(name) or name == "1":
        raise PresentationSyntaxError(f"invalid generator name {name!r}", line, column)
    return name


def parse_presentation(text: str, name: str = "") -> Presentation:
    """
    Parse the line-oriented presentation format.

    Recognized lines: "# comment", "objects: x, y", "gens: a: x -> y, b",
    "invertible: e" and "rels:" followed by relations "w1 = w2" (one per line,
    or ';'-separated). "1" is the empty word; "w1 = w2 = w3" is a chain.

    Args:
        text: file contents
        name: display label for the presentation

    Returns:
        Presentation with classification available on demand

    Raises:
        PresentationSyntaxError: with the line and column of the problem
    """
    objects: List[str] = []
    gens: List[Tuple[str, Optional[str], Optional[str], int, int]] = []
    declared_invertible: List[Tuple[str, int, int]] = []
    raw_relations: List[Tuple[List[List[Tuple[str, int]]], int]] = []
    in_rels = False

    for lineno, raw in enumerate(_normalize(text).splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        key_match = re.match(r"^\s*([A-Za-z]+)\s*:", line)
        key = key_match.group(1).lower() if key_match else None
        if key in KEYS:
            body_offset = key_match.end()
            body = line[body_offset:]
            in_rels = key == "rels"
            if key == "objects":
                for token, col in _split_commas(body, body_offset):
                    objects.append(_check_name(token, lineno, col))
            elif key == "gens":
                for token, col in _split_commas(body, body_offset):
                    gens.append(_parse_gen(token, lineno, col))
            elif key == "invertible":
                for token, col in _split_commas(body, body_offset):
                    declared_invertible.append((token, lineno, col))
            elif body.strip():
                raw_relations.extend(_parse_relations(body, body_offset, lineno))
            continue
        if not in_rels:
            raise PresentationSyntaxError(
                f"unexpected line {raw.strip()!r}", lineno, len(raw) - len(raw.lstrip()) + 1
            )
        raw_relations.extend(_parse_relations(line, 0, lineno))

    if not objects:
        objects = [DEFAULT_OBJECT]
    object_set = set(objects)
    generators: List[Generator] = []
    seen = set()
    invertible_names = {n for n, _, _ in declared_invertible}
    for gname, src, tgt, lineno, col in gens:
        if gname in seen:
            raise PresentationSyntaxError(f"duplicate generator {gname!r}", lineno, col)
        seen.add(gname)
        src = src or objects[0]
        tgt = tgt or objects[0]
        for obj in (src, tgt):
            if obj not in object_set:
                raise PresentationSyntaxError(f"undeclared object {obj!r}", lineno, col)
        generators.append(Generator(gname, src, tgt, gname in invertible_names))
    for iname, lineno, col in declared_invertible:
        if iname not in seen:
            raise UndeclaredGenerator(f"undeclared generator {iname!r}", lineno, col)

    by_name = {g.name: g for g in generators}
    relations: List[Relation] = []
    for sides, lineno in raw_relations:
        words: List[Word] = []
        for side in sides:
            for token, col in side:
                if token not in by_name:
                    raise UndeclaredGenerator(f"undeclared generator {token!r}", lineno, col)
            words.append(tuple(t for t, _ in side))
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                column = sides[i][0][1] if sides[i] else 1
                relations.append(_typed_relation(by_name, words[i], words[j], lineno, column))

    presentation = Presentation(tuple(objects), tuple(generators), tuple(relations), name)
    logger.debug(
        "parsed presentation %s: %d generators, %d relations",
        name or "<anonymous>",
        len(generators),
        len(relations),
    )
    return presentation


def _split_commas(body: str, offset: int) -> List[Tuple[str, int]]:
    items = []
    position = 0
    for piece in body.split(","):
        stripped = piece.strip()
        if stripped:
            column = offset + position + piece.index(stripped) + 1
            items.append((stripped, column))
        position += len(piece) + 1
    return items


def _parse_gen(token: str, lineno: int, column: int):
    match = re.match(r"^(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)$", token)
    if match:
        return (
            _check_name(match.group(1), lineno, column),
            match.group(2),
            match.group(3),
            lineno,
            column,
        )
    if " " in token or ":" in token:
        raise PresentationSyntaxError(f"malformed generator entry {token!r}", lineno, column)
    return (_check_name(token, lineno, column), None, None, lineno, column)


def _parse_relations(text: str, offset: int, lineno: int):
    parsed = []
    position = 0
    for chunk in text.split(";"):
        chunk_offset = offset + position
        position += len(chunk) + 1
        if not chunk.strip():
            continue
        sides: List[List[Tuple[str, int]]] = []
        side_position = 0
        for side_text in chunk.split("="):
            tokens = _tokens_with_columns(side_text, chunk_offset + side_position)
            side_position += len(side_text) + 1
            if not tokens:
                raise PresentationSyntaxError(
                    "empty side in relation (write 1 for the empty word)",
                    lineno,
                    chunk_offset + side_position,
                )
            if len(tokens) == 1 and tokens[0][0] == "1":
                sides.append([])
                continue
            for token, col in tokens:
                if token == "1":
                    raise PresentationSyntaxError("'1' inside a nonempty word", lineno, col)
                if token.endswith(INVERSE_SUFFIXES):
                    raise PresentationSyntaxError(
                        "relations must be positive words", lineno, col
                    )
            sides.append(tokens)
        if len(sides) < 2:
            raise PresentationSyntaxError(
                "relation needs '='", lineno, chunk_offset + 1
            )
        parsed.append((sides, lineno))
    return parsed


def _path_ends(by_name: Dict[str, Generator], word: Word, lineno: int, column: int):
    for left, right in zip(word, word[1:]):
        if by_name[left].target != by_name[right].source:
            raise SourceTargetMismatch(
                f"{left} and {right} do not compose", lineno, column
            )
    return by_name[word[0]].source, by_name[word[-1]].target


def _typed_relation(by_name, lhs: Word, rhs: Word, lineno: int, column: int) -> Relation:
    if not lhs and not rhs:
        raise PresentationSyntaxError("trivial relation 1 = 1", lineno, column)
    ends = [_path_ends(by_name, w, lineno, column) for w in (lhs, rhs) if w]
    if len(ends) == 1:
        source, target = ends[0]
        if source != target:
            raise SourceTargetMismatch(
                "a relation w = 1 needs w to be a loop", lineno, column
            )
    elif ends[0] != ends[1]:
        raise SourceTargetMismatch(
            f"sides run {ends[0][0]}->{ends[0][1]} and {ends[1][0]}->{ends[1][1]}",
            lineno,
            column,
        )
    return Relation(lhs, rhs)


def build_presentation(
    generators: Sequence[str],
    relations: Iterable[Tuple[Sequence[str], Sequence[str]]],
    invertible: Iterable[str] = (),
    name: str = "",
) -> Presentation:
    """
    Build a monoid presentation from Python data instead of text.

    Args:
        generators: generator names in rank order
        relations: (lhs, rhs) pairs of name sequences
        invertible: names to declare invertible
        name: display label

    Returns:
        Presentation
    """
    declared = set(invertible)
    gens = tuple(
        Generator(_check_name(g, 0, 0), declared_invertible=g in declared)
        for g in generators
    )
    by_name = {g.name: g for g in gens}
    rels = []
    for lhs, rhs in relations:
        for token in tuple(lhs) + tuple(rhs):
            if token not in by_name:
                raise UndeclaredGenerator(f"undeclared generator {token!r}")
        rels.append(_typed_relation(by_name, tuple(lhs), tuple(rhs), 0, 0))
    return Presentation((DEFAULT_OBJECT,), gens, tuple(rels), name)


def serialize_presentation(p: Presentation) -> str:
    """Write p in the text format; parse_presentation reads it back equal."""
    lines = []
    if p.objects != (DEFAULT_OBJECT,):
        lines.append("objects: " + ", ".join(p.objects))
        lines.append(
            "gens: " + ", ".join(f"{g.name}: {g.source} -> {g.target}" for g in p.generators)
        )
    else:
        lines.append("gens: " + ", ".join(p.generator_names))
    declared = [g.name for g in p.generators if g.declared_invertible]
    if declared:
        lines.append("invertible: " + ", ".join(declared))
    lines.append("rels:")
    lines.extend(str(rel) for rel in p.relations)
    return "\n".join(lines) + "\n"


def _split_inverse(token: str) -> Tuple[str, int]:
    for suffix in INVERSE_SUFFIXES:
        if token.endswith(suffix):
            return token[: -len(suffix)], -1
    return token, 1


def parse_signed_word(p: Presentation, text: str, obj: Optional[str] = None) -> SignedWord:
    """
    Parse a signed word such as "a^-1 b a".

    Args:
        p: presentation supplying the alphabet
        text: whitespace-separated tokens, "x^-1" for inverses, "1" for empty
        obj: object carried by the empty word (defaults to the first object)

    Returns:
        SignedWord whose consecutive letters compose
    """
    letters: List[Letter] = []
    for token, column in _tokens_with_columns(_normalize(text), 0):
        if token == "1":
            continue
        name, sign = _split_inverse(token)
        if name not in p.by_name:
            raise UndeclaredGenerator(f"undeclared generator {name!r}", 1, column)
        letters.append(Letter(name, sign))
    return signed_word(p, letters, obj)


def signed_word(p: Presentation, letters: Sequence[Letter], obj: Optional[str] = None) -> SignedWord:
    """Attach source and target objects to letters, checking they compose."""
    letters = tuple(letters)
    if not letters:
        base = obj or p.objects[0]
        return SignedWord((), base, base)
    ends = []
    for letter in letters:
        gen = p.by_name[letter.name]
        ends.append((gen.source, gen.target) if letter.positive else (gen.target, gen.source))
    for (_, target), (source, _) in zip(ends, ends[1:]):
        if target != source:
            raise SourceTargetMismatch(f"letters of {format_letters(letters)} do not compose")
    return SignedWord(letters, ends[0][0], ends[-1][1])


def parse_word(p: Presentation, text: str) -> Word:
    """Parse a positive word; inverse tokens are rejected."""
    sw = parse_signed_word(p, text)
    if not sw.is_positive:
        raise PresentationSyntaxError(f"expected a positive word, got {text!r}")
    return sw.names()


def free_reduce(w: SignedWord) -> SignedWord:
    """
    Remove adjacent s^-1 s and s s^-1 pairs until none remain.

    Args:
        w: signed word

    Returns:
        Freely reduced word with the same source and target
    """
    stack: List[Letter] = []
    for letter in w.letters:
        if stack and stack[-1].name == letter.name and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return SignedWord(tuple(stack), w.source, w.target)
