"""
Bounded congruence closure for words over a finite alphabet.

Relations are applied in both directions. A class is explored in full or the
engine gives up with ``Undecided``; it never guesses.
"""
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from django.utils.translation import gettext_lazy as _

from homzero.conf import Conf, logger
from homzero.signals import budget_exhausted

Word = Tuple[int, ...]


class Undecided(Exception):
    """
    A congruence class could not be enumerated within the bounds.
    """


def shortlex(word: Word):
    return len(word), word


def occurrences(word: Word, factor: Word) -> Iterator[int]:
    size = len(factor)
    for i in range(len(word) - size + 1):
        if word[i : i + size] == factor:
            yield i


def factors(word: Word) -> Iterator[Word]:
    """
    Every nonempty factor of ``word``.
    """
    for i in range(len(word)):
        for j in range(i + 1, len(word) + 1):
            yield word[i:j]


class RewritingSystem:
    """
    Word problem for a finite set of relations, decided by exhaustive search.

    Explored classes are remembered; every word of a class points to the
    class' shortlex-minimal representative.
    """

    def __init__(
        self,
        relations: Sequence[Tuple[Word, Word]],
        max_length: Optional[int] = None,
        budget: Optional[int] = None,
    ):
        self.rules: List[Tuple[Word, Word]] = []
        for lhs, rhs in relations:
            self.rules.append((tuple(lhs), tuple(rhs)))
            self.rules.append((tuple(rhs), tuple(lhs)))
        longest = max((len(side) for rule in self.rules for side in rule), default=1)
        self.max_length = 2 * longest + 2 if max_length is None else max_length
        self.budget = Conf.REWRITE_BUDGET if budget is None else budget
        self._representative: Dict[Word, Word] = {}
        self._members: Dict[Word, FrozenSet[Word]] = {}

    def neighbours(self, word: Word) -> Iterator[Word]:
        for lhs, rhs in self.rules:
            for i in occurrences(word, lhs):
                yield word[:i] + rhs + word[i + len(lhs) :]

    def class_of(self, word: Word) -> FrozenSet[Word]:
        word = tuple(word)
        if word in self._representative:
            return self._members[self._representative[word]]
        limit = max(self.max_length, len(word))
        seen = {word}
        queue = deque([word])
        while queue:
            current = queue.popleft()
            for candidate in self.neighbours(current):
                if candidate in seen:
                    continue
                if len(candidate) > limit:
                    budget_exhausted.send(
                        sender="homzero.rewriting", budget=self.budget, reason="length"
                    )
                    raise Undecided(f"class of {word} reaches words longer than {limit}")
                seen.add(candidate)
                if len(seen) > self.budget:
                    budget_exhausted.send(
                        sender="homzero.rewriting", budget=self.budget, reason="budget"
                    )
                    raise Undecided(f"class of {word} exceeds {self.budget} words")
                queue.append(candidate)
        members = frozenset(seen)
        representative = min(members, key=shortlex)
        self._members[representative] = members
        for member in members:
            self._representative[member] = representative
        logger.debug(_(f"class of {word} has {len(members)} words"))
        return members

    def representative(self, word: Word) -> Word:
        self.class_of(word)
        return self._representative[tuple(word)]

    def equivalent(self, u: Word, v: Word) -> bool:
        return self.representative(u) == self.representative(v)
