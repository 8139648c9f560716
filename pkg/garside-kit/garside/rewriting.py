"""
garside/rewriting.py

Shortlex-oriented rewriting systems built from presentation relations:
reduction to normal form and the critical-pair confluence check.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

Word = Tuple[str, ...]
Rule = Tuple[Word, Word]


def shortlex_ordered(a: Word, b: Word, rank: Dict[str, int]) -> Rule:
    """Return (larger, smaller) in the shortlex order induced by rank."""
    key_a = (len(a), tuple(rank[x] for x in a))
    key_b = (len(b), tuple(rank[x] for x in b))
    if key_a > key_b:
        return (a, b)
    return (b, a)


def _find(word: Word, pattern: Word, start: int = 0) -> int:
    n = len(pattern)
    for i in range(start, len(word) - n + 1):
        if word[i : i + n] == pattern:
            return i
    return -1


@dataclass(frozen=True)
class RewritingSystem:
    rules: Tuple[Rule, ...]

    @classmethod
    def from_presentation(cls, p) -> "RewritingSystem":
        rank = p.rank
        rules = []
        for rel in p.relations:
            if rel.lhs != rel.rhs:
                rule = shortlex_ordered(rel.lhs, rel.rhs, rank)
                if rule not in rules:
                    rules.append(rule)
        return cls(tuple(rules))

    def reduce(self, word: Sequence[str]) -> Word:
        """Rewrite leftmost redexes until the word is irreducible."""
        word = tuple(word)
        while True:
            for left, right in self.rules:
                i = _find(word, left)
                if i >= 0:
                    word = word[:i] + right + word[i + len(left) :]
                    break
            else:
                return word

    def critical_pairs(self) -> Iterator[Tuple[Word, Word, Word]]:
        """
        Yield (source, one_step, other_step) for every overlap and inclusion
        between rule left-hand sides.
        """
        rules = self.rules
        for i, (l1, r1) in enumerate(rules):
            for j, (l2, r2) in enumerate(rules):
                # suffix of l1 equals prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        source = l1 + l2[k:]
                        yield (source, r1 + l2[k:], l1[:-k] + r2)
                if i != j and len(l2) <= len(l1):
                    start = _find(l1, l2)
                    while start >= 0:
                        yield (l1, r1, l1[:start] + r2 + l1[start + len(l2) :])
                        start = _find(l1, l2, start + 1)

    def unresolved_pairs(self) -> List[Tuple[Word, Word, Word]]:
        return [
            (source, left, right)
            for source, left, right in self.critical_pairs()
            if self.reduce(left) != self.reduce(right)
        ]

    def is_confluent(self) -> bool:
        """True when every critical pair rewrites to a common normal form."""
        for _, left, right in self.critical_pairs():
            if self.reduce(left) != self.reduce(right):
                return False
        return True
