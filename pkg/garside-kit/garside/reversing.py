"""
garside/reversing.py

Right and left subword reversing, the syntactic right-complement theta and
its extension theta*, reversing grids, the cube condition and the
completeness check built on it.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import get_logger, get_settings
from .errors import NotComplemented, OracleUnavailable, ReversingDiverged
from .presentation import (
    Letter,
    Presentation,
    SignedWord,
    Word,
    format_letters,
    format_word,
    free_reduce,
    negative_letters,
    positive_letters,
    signed_word,
)

logger = get_logger(__name__)

Letters = Tuple[Letter, ...]


class Status(str, Enum):
    TERMINATED = "Terminated"
    DIVERGED = "Diverged"
    STUCK = "Stuck"


@dataclass(frozen=True)
class ThetaTable:
    """Partial map (s, t) -> theta(s, t); theta(s, s) is the empty word."""

    values: Dict[Tuple[str, str], Word]

    def get(self, s: str, t: str) -> Optional[Word]:
        if s == t:
            return ()
        return self.values.get((s, t))

    def defined_pairs(self) -> List[Tuple[str, str]]:
        return sorted(self.values)

    def to_dict(self) -> Dict[str, str]:
        return {f"{s},{t}": format_word(w) for (s, t), w in sorted(self.values.items())}

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.values.items())))


@dataclass(frozen=True)
class TraceStep:
    position: int
    pair: Letters
    replacement: Letters

    def to_dict(self) -> Dict:
        return {
            "position": self.position,
            "pairReversed": format_letters(self.pair),
            "replacement": format_letters(self.replacement),
        }


@dataclass(frozen=True)
class ReversalOutcome:
    """
    Result of a reversing run.

    For right reversing a terminated result reads positive . negative^-1;
    for left reversing it reads negative^-1 . positive. `result` is freely
    reduced. `terminal` keeps the configuration reversing stopped at, and
    `positive`, `negative` and `fractions()` read that configuration, since
    cancelling across the junction needs cancellativity. `alternatives`
    holds every terminal configuration the breadth-first explorer reached
    (one entry for complemented presentations).
    """

    status: Status
    result: Optional[SignedWord]
    steps_used: int
    direction: str = "right"
    trace: Tuple[TraceStep, ...] = ()
    reason: str = ""
    alternatives: Tuple[SignedWord, ...] = ()
    terminal: Optional[SignedWord] = None

    @property
    def terminated(self) -> bool:
        return self.status is Status.TERMINATED

    @property
    def _configuration(self) -> Optional[SignedWord]:
        return self.terminal if self.terminal is not None else self.result

    @property
    def positive(self) -> Word:
        config = self._configuration
        return _split(config.letters)[1] if config else ()

    @property
    def negative(self) -> Word:
        """The word n with the negative block equal to n^-1."""
        config = self._configuration
        return _split(config.letters)[0] if config else ()

    def fractions(self) -> List[Tuple[Word, Word]]:
        """(positive, negative) for every alternative terminal word."""
        return [
            tuple(reversed(_split(w.letters)))
            for w in self.alternatives
        ]

    def to_dict(self) -> Dict:
        data = {
            "status": self.status.value,
            "result": str(self.result) if self.result is not None else None,
            "steps": self.steps_used,
        }
        if self.terminal is not None and self.terminal != self.result:
            data["terminal"] = str(self.terminal)
        if self.reason:
            data["reason"] = self.reason
        if len(self.alternatives) > 1:
            data["alternatives"] = [str(w) for w in self.alternatives]
        if self.trace:
            data["trace"] = [step.to_dict() for step in self.trace]
        return data


def _split(letters: Sequence[Letter]) -> Tuple[Word, Word]:
    """
    Return (negative, positive) words of a terminal configuration.

    Both shapes (p n^-1 and n^-1 p) keep the letters of each block
    contiguous, so reading the signs is enough.
    """
    pos = tuple(x.name for x in letters if x.positive)
    neg = tuple(x.name for x in reversed(letters) if not x.positive)
    return neg, pos


# ---------------------------------------------------------------------------
# theta


def build_theta(p: Presentation) -> ThetaTable:
    """
    Extract the syntactic right-complement from a complemented presentation.

    Args:
        p: presentation

    Returns:
        ThetaTable with theta(s,t), theta(t,s) read off each relation s.v = t.u

    Raises:
        NotComplemented: naming the offending generator pair
    """
    return _theta_cached(p)


@lru_cache(maxsize=256)
def _theta_cached(p: Presentation) -> ThetaTable:
    values: Dict[Tuple[str, str], Word] = {}
    for rel in p.relations:
        if not rel.lhs or not rel.rhs:
            head = (rel.lhs or rel.rhs)[0]
            raise NotComplemented((head, "1"), "relation with an empty side")
        s, t = rel.lhs[0], rel.rhs[0]
        if s == t:
            raise NotComplemented((s, t), "both sides start with the same letter")
        if (s, t) in values:
            raise NotComplemented((s, t), "two relations share this head pair")
        values[(s, t)] = rel.lhs[1:]
        values[(t, s)] = rel.rhs[1:]
    return ThetaTable(values)


# ---------------------------------------------------------------------------
# right reversing


def _patterns(letters: Letters) -> List[int]:
    return [
        i
        for i in range(len(letters) - 1)
        if not letters[i].positive and letters[i + 1].positive
    ]


def _shape(letters: Letters) -> Tuple[Tuple[str, int, bool], ...]:
    """Run-length compression: runs of two or more equal letters become one marker."""
    shape = []
    i = 0
    while i < len(letters):
        j = i
        while j + 1 < len(letters) and letters[j + 1] == letters[i]:
            j += 1
        shape.append((letters[i].name, letters[i].sign, j > i))
        i = j + 1
    return tuple(shape)


class _DivergenceDetector:
    """Flags exact repeats and shapes growing in arithmetic progression."""

    def __init__(self):
        self.seen = set()
        self.shapes: Dict[Tuple, List[int]] = {}

    def observe(self, letters: Letters) -> str:
        if letters in self.seen:
            return "repeated configuration"
        self.seen.add(letters)
        lengths = self.shapes.setdefault(_shape(letters), [])
        lengths.append(len(letters))
        if len(lengths) >= 3:
            a, b, c = lengths[-3:]
            if a < b < c and b - a == c - b:
                return "growing shape"
        return ""


def _resolve_limits(budget: Optional[int], max_length: Optional[int]) -> Tuple[int, int]:
    settings = get_settings()
    budget = settings.max_steps if budget is None else budget
    max_length = settings.max_length if max_length is None else max_length
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    return budget, max_length


def _as_letters(w: Union[SignedWord, Sequence[Letter]]) -> Letters:
    return w.letters if isinstance(w, SignedWord) else tuple(w)


def right_reverse(
    p: Presentation,
    w: Union[SignedWord, Sequence[Letter]],
    budget: Optional[int] = None,
    strategy: str = "leftmost",
    trace: bool = False,
    max_length: Optional[int] = None,
) -> ReversalOutcome:
    """
    Right-reverse a signed word: s^-1 t -> theta(s,t) theta(t,s)^-1.

    Complemented presentations use the deterministic tile engine; other
    presentations are explored breadth-first over rule choices.

    Args:
        p: presentation
        w: signed word
        budget: step limit (defaults to GARSIDE_MAX_STEPS)
        strategy: "leftmost" or "rightmost" pattern selection
        trace: record every step (deterministic engine only)
        max_length: longest configuration allowed (defaults to GARSIDE_MAX_LENGTH)

    Returns:
        ReversalOutcome
    """
    budget, max_length = _resolve_limits(budget, max_length)
    letters = _as_letters(w)
    if p.classification.complemented:
        return _reverse_complemented(p, letters, budget, strategy, trace, max_length)
    return _reverse_explore(p, letters, budget, max_length)


def _reverse_complemented(
    p: Presentation,
    letters: Letters,
    budget: int,
    strategy: str,
    trace: bool,
    max_length: int,
) -> ReversalOutcome:
    theta = build_theta(p)
    detector = _DivergenceDetector()
    detector.observe(letters)
    steps: List[TraceStep] = []
    used = 0
    while True:
        positions = _patterns(letters)
        if not positions:
            terminal = signed_word(p, letters)
            return ReversalOutcome(
                Status.TERMINATED,
                free_reduce(terminal),
                used,
                trace=tuple(steps),
                alternatives=(terminal,),
                terminal=terminal,
            )
        i = positions[0] if strategy == "leftmost" else positions[-1]
        s, t = letters[i].name, letters[i + 1].name
        forward, backward = theta.get(s, t), theta.get(t, s)
        if forward is None or backward is None:
            return ReversalOutcome(
                Status.STUCK,
                signed_word(p, letters),
                used,
                trace=tuple(steps),
                reason=f"no relation for {s}, {t}",
            )
        replacement = positive_letters(forward) + negative_letters(backward)
        if trace:
            steps.append(TraceStep(i, letters[i : i + 2], replacement))
        letters = letters[:i] + replacement + letters[i + 2 :]
        used += 1
        if not _patterns(letters):
            continue
        if len(letters) > max_length:
            reason = "length cap"
        elif used >= budget:
            reason = "budget"
        else:
            reason = detector.observe(letters)
        if reason:
            logger.debug("reversing diverged after %d steps: %s", used, reason)
            return ReversalOutcome(
                Status.DIVERGED, None, used, trace=tuple(steps), reason=reason
            )


def _reversing_rules(p: Presentation) -> Dict[Tuple[str, str], List[Letters]]:
    """All replacements for s^-1 t in a presentation that is not complemented."""
    rules: Dict[Tuple[str, str], List[Letters]] = {}

    def add(s: str, t: str, replacement: Letters) -> None:
        bucket = rules.setdefault((s, t), [])
        if replacement not in bucket:
            bucket.append(replacement)

    for name in p.generator_names:
        add(name, name, ())
    for rel in p.relations:
        if not rel.lhs or not rel.rhs:
            continue
        s, v = rel.lhs[0], rel.lhs[1:]
        t, u = rel.rhs[0], rel.rhs[1:]
        add(s, t, positive_letters(v) + negative_letters(u))
        add(t, s, positive_letters(u) + negative_letters(v))
    return rules


def _reverse_explore(
    p: Presentation, letters: Letters, budget: int, max_length: int
) -> ReversalOutcome:
    rules = _reversing_rules(p)
    max_states = get_settings().max_states
    queue = deque([letters])
    visited = {letters}
    terminals: List[Letters] = []
    expanded = 0
    capped = ""
    while queue:
        current = queue.popleft()
        positions = _patterns(current)
        if not positions:
            terminals.append(current)
            continue
        if expanded >= budget:
            capped = "budget"
            break
        expanded += 1
        i = positions[0]
        for replacement in rules.get((current[i].name, current[i + 1].name), ()):
            nxt = current[:i] + replacement + current[i + 2 :]
            if len(nxt) > max_length:
                capped = "length cap"
                continue
            if nxt not in visited:
                if len(visited) >= max_states:
                    capped = "state cap"
                    continue
                visited.add(nxt)
                queue.append(nxt)

    ordered = sorted(set(terminals), key=lambda ls: (len(ls), format_letters(ls)))
    alternatives = tuple(signed_word(p, ls) for ls in ordered)
    if capped:
        logger.debug("breadth-first reversing stopped: %s", capped)
        return ReversalOutcome(
            Status.DIVERGED, None, expanded, reason=capped, alternatives=alternatives
        )
    if not alternatives:
        return ReversalOutcome(
            Status.STUCK, signed_word(p, letters), expanded, reason="every branch is stuck"
        )
    return ReversalOutcome(
        Status.TERMINATED,
        free_reduce(alternatives[0]),
        expanded,
        alternatives=alternatives,
        terminal=alternatives[0],
    )


# ---------------------------------------------------------------------------
# left reversing


def left_reverse(
    p: Presentation,
    w: Union[SignedWord, Sequence[Letter]],
    budget: Optional[int] = None,
    strategy: str = "leftmost",
    trace: bool = False,
    max_length: Optional[int] = None,
) -> ReversalOutcome:
    """
    Left-reverse a signed word: t s^-1 -> theta~(t,s)^-1 theta~(s,t).

    Runs right reversing on the mirrored presentation and word.

    Returns:
        ReversalOutcome whose terminated result reads negative^-1 . positive
    """
    letters = tuple(reversed(_as_letters(w)))
    mirrored = p.mirror()
    outcome = right_reverse(mirrored, letters, budget, strategy, trace, max_length)

    def back(sw: Optional[SignedWord]) -> Optional[SignedWord]:
        if sw is None:
            return None
        return signed_word(p, tuple(reversed(sw.letters)))

    return ReversalOutcome(
        outcome.status,
        back(outcome.result),
        outcome.steps_used,
        direction="left",
        trace=outcome.trace,
        reason=outcome.reason,
        alternatives=tuple(back(a) for a in outcome.alternatives),
        terminal=back(outcome.terminal),
    )


# ---------------------------------------------------------------------------
# theta*


def theta_star(
    p: Presentation, u: Sequence[str], v: Sequence[str], budget: Optional[int] = None
) -> Optional[Word]:
    """
    theta*(u, v): the positive part v' of u^-1 v reversed to v' u'^-1.

    Args:
        p: complemented presentation
        u: positive word
        v: positive word

    Returns:
        The word v', or None when reversing gets stuck

    Raises:
        ReversingDiverged: when the budget or a loop detector stops the run
    """
    outcome = right_reverse(p, negative_letters(u) + positive_letters(v), budget)
    if outcome.status is Status.STUCK:
        return None
    if outcome.status is Status.DIVERGED:
        raise ReversingDiverged(outcome)
    return outcome.positive


@dataclass(frozen=True)
class GridCell:
    top: Optional[Word]
    left: Optional[Word]
    right: Optional[Word]
    bottom: Optional[Word]


@dataclass(frozen=True)
class ReversingGrid:
    """
    Grid of reversing tiles for u^-1 v: one row per letter of u and one
    column per letter of v; a None edge marks a stuck tile.
    """

    u: Word
    v: Word
    cells: Tuple[Tuple[GridCell, ...], ...]

    @property
    def complete(self) -> bool:
        return all(c.right is not None and c.bottom is not None for row in self.cells for c in row)

    def bottom_word(self) -> Optional[Word]:
        """theta*(u, v) read along the bottom edge."""
        if not self.u:
            return self.v
        if not self.complete:
            return None
        return tuple(x for cell in self.cells[-1] for x in cell.bottom)

    def right_word(self) -> Optional[Word]:
        """theta*(v, u) read along the right edge."""
        if not self.v:
            return self.u
        if not self.complete:
            return None
        return tuple(x for row in self.cells for x in row[-1].right)

    def to_dict(self) -> List[List[Dict[str, Optional[str]]]]:
        def fmt(w: Optional[Word]) -> Optional[str]:
            return None if w is None else format_word(w)

        return [
            [
                {"top": fmt(c.top), "left": fmt(c.left), "right": fmt(c.right), "bottom": fmt(c.bottom)}
                for c in row
            ]
            for row in self.cells
        ]


def reversing_grid(p: Presentation, u: Sequence[str], v: Sequence[str]) -> ReversingGrid:
    """
    Build the grid of tiles for u^-1 v cell by cell.

    Each cell reverses left^-1 . top to bottom . right^-1, i.e.
    bottom = theta*(left, top) and right = theta*(top, left).
    """
    u, v = tuple(u), tuple(v)
    tops: List[Optional[Word]] = [(x,) for x in v]
    rows = []
    for letter in u:
        left: Optional[Word] = (letter,)
        row = []
        for j, top in enumerate(tops):
            if left is None or top is None:
                bottom = right = None
            else:
                bottom = theta_star(p, left, top)
                right = theta_star(p, top, left)
            row.append(GridCell(top, left, right, bottom))
            tops[j] = bottom
            left = right
        rows.append(tuple(row))
    return ReversingGrid(u, v, tuple(rows))


# ---------------------------------------------------------------------------
# cube condition and completeness


@dataclass(frozen=True)
class CubeVerdict:
    triple: Tuple[Word, Word, Word]
    holds: bool
    witness: Optional[Tuple[Word, Word]] = None
    oracle: str = ""
    diverged: bool = False

    def to_dict(self) -> Dict:
        data = {
            "triple": [format_word(w) for w in self.triple],
            "holds": self.holds,
            "oracle": self.oracle,
        }
        if self.witness is not None:
            data["witness"] = [format_word(w) for w in self.witness]
        if self.diverged:
            data["diverged"] = True
        return data


def cube_oracle(p: Presentation):
    """Equality backend used inside cube checks; never reversing-based."""
    from .divisibility import BackendKind, make_backend

    if p.classification.homogeneous:
        return make_backend(p, BackendKind.HOMOGENEOUS_BFS)
    if p.classification.length_reducing_confluent:
        return make_backend(p, BackendKind.CONFLUENT_REWRITING)
    raise OracleUnavailable(
        "cube check needs a homogeneous or confluent presentation to compare words"
    )


def cube_check(p: Presentation, u: Sequence[str], v: Sequence[str], w: Sequence[str], eq=None) -> CubeVerdict:
    """
    Check the cube condition on one triple of positive words.

    Args:
        p: presentation
        u, v, w: positive words with a common source
        eq: equality backend; defaults to cube_oracle(p)

    Returns:
        CubeVerdict naming the oracle used
    """
    u, v, w = tuple(u), tuple(v), tuple(w)
    eq = eq or cube_oracle(p)
    if p.classification.complemented:
        return _cube_complemented(p, u, v, w, eq)
    return _cube_explored(p, u, v, w, eq)


def _theta_hat(p: Presentation, u: Word, v: Word, w: Word) -> Tuple[Optional[Word], bool]:
    try:
        first = theta_star(p, u, v)
        if first is None:
            return None, False
        return theta_star(p, u + first, w), False
    except ReversingDiverged:
        return None, True


def _cube_complemented(p, u, v, w, eq) -> CubeVerdict:
    left, left_div = _theta_hat(p, u, v, w)
    right, right_div = _theta_hat(p, v, u, w)
    diverged = left_div or right_div
    if left is None and right is None:
        holds = left_div == right_div
        return CubeVerdict((u, v, w), holds, None if holds else ((), ()), eq.kind.value, diverged)
    if left is None or right is None:
        return CubeVerdict((u, v, w), False, (left or (), right or ()), eq.kind.value, diverged)
    if eq.equal(left, right):
        return CubeVerdict((u, v, w), True, None, eq.kind.value, diverged)
    return CubeVerdict((u, v, w), False, (left, right), eq.kind.value, diverged)


def _cube_explored(p, u, v, w, eq) -> CubeVerdict:
    long_word = negative_letters(u) + positive_letters(w) + negative_letters(w) + positive_letters(v)
    long_run = right_reverse(p, long_word)
    short_run = right_reverse(p, negative_letters(u) + positive_letters(v))
    diverged = long_run.status is Status.DIVERGED or short_run.status is Status.DIVERGED
    if diverged:
        return CubeVerdict((u, v, w), False, None, eq.kind.value, True)
    shorts = short_run.fractions() if short_run.terminated else []
    for v_tilde, u_tilde in long_run.fractions() if long_run.terminated else []:
        if not any(
            _factors_through(eq, v_tilde, u_tilde, v0, u0) for v0, u0 in shorts
        ):
            return CubeVerdict((u, v, w), False, (v_tilde, u_tilde), eq.kind.value)
    return CubeVerdict((u, v, w), True, None, eq.kind.value)


def _factors_through(eq, v_tilde: Word, u_tilde: Word, v0: Word, u0: Word) -> bool:
    """Is there w' with v_tilde = v0 w' and u_tilde = u0 w'?"""
    for rest in eq.left_remainders(v0, v_tilde):
        if eq.equal(u_tilde, u0 + rest):
            return True
    return False


@dataclass(frozen=True)
class CompletenessVerdict:
    status: str
    witness: Optional[CubeVerdict] = None
    triples_checked: int = 0

    @property
    def complete(self) -> bool:
        return self.status == "Complete"

    def to_dict(self) -> Dict:
        data = {"status": self.status, "triplesChecked": self.triples_checked}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


def completeness_check(p: Presentation) -> CompletenessVerdict:
    """
    Decide completeness of right reversing via the cube condition on all
    generator triples; Unknown when Noetherianity is not certified.
    """
    return _completeness_cached(p)


@lru_cache(maxsize=64)
def _completeness_cached(p: Presentation) -> CompletenessVerdict:
    if not p.noetherian_certified:
        return CompletenessVerdict("Unknown")
    try:
        eq = cube_oracle(p)
    except OracleUnavailable:
        logger.warning("no equality oracle for %s; completeness unknown", p.name or "presentation")
        return CompletenessVerdict("Unknown")
    checked = 0
    for r, s, t in product(p.generator_names, repeat=3):
        sources = {p.by_name[x].source for x in (r, s, t)}
        if len(sources) > 1:
            continue
        verdict = cube_check(p, (r,), (s,), (t,), eq)
        checked += 1
        if not verdict.holds:
            logger.debug("cube condition fails on %s", verdict.triple)
            if verdict.diverged:
                return CompletenessVerdict("Unknown", verdict, checked)
            return CompletenessVerdict("Incomplete", verdict, checked)
    return CompletenessVerdict("Complete", None, checked)
