"""
Elements of the 0-reflector of a semigroup with zero.

An element is a class of sequences of nonzero elements whose consecutive
products vanish. Equality of classes is only semi-decidable here, so the
equivalence search is bounded and may answer ``unknown``.
"""
import random
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from django.db import models
from django.utils.translation import gettext_lazy as _

from homzero.abelian import IntMatrix
from homzero.conf import Conf, logger
from homzero.presentation import Presentation
from homzero.semigroup import FiniteZeroSemigroup, invalid
from homzero.signals import budget_exhausted
from homzero.zmodule import ZeroModuleAction

Sequence_ = Tuple[int, ...]


class NuVerdict(models.TextChoices):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


def is_reflector_sequence(s: FiniteZeroSemigroup, seq: Sequence[int]) -> bool:
    if not seq or any(s.is_zero(x) or not 0 <= x < s.size for x in seq):
        return False
    return all(s.is_zero(s.mul(x, y)) for x, y in zip(seq, seq[1:]))


@dataclass(frozen=True)
class ReflectorElement:
    """
    A representative sequence. Equality is equality of sequences.
    """

    seq: Sequence_
    semigroup: FiniteZeroSemigroup = field(compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        if not is_reflector_sequence(self.semigroup, self.seq):
            raise invalid(
                f"{self.render()} is not a sequence of nonzero elements with zero products",
                "not_reflector",
                self.seq,
            )

    @classmethod
    def singleton(cls, s: FiniteZeroSemigroup, x: int) -> "ReflectorElement":
        return cls((x,), s)

    @property
    def first(self) -> int:
        return self.seq[0]

    @property
    def last(self) -> int:
        return self.seq[-1]

    @property
    def prefix(self) -> Sequence_:
        """
        The sequence without its last element, possibly empty.
        """
        return self.seq[:-1]

    def __len__(self):
        return len(self.seq)

    def render(self) -> str:
        names = self.semigroup.names
        return "<" + ",".join(names[x] if 0 <= x < len(names) else str(x) for x in self.seq) + ">"

    __str__ = render

    def __mul__(self, other: "ReflectorElement") -> "ReflectorElement":
        return multiply(self, other)


def multiply(x: ReflectorElement, y: ReflectorElement) -> ReflectorElement:
    """
    Merges the touching ends when their product is nonzero, else concatenates.
    """
    s = x.semigroup
    if y.semigroup != s:
        raise invalid("factors come from different semigroups", "semigroup_mismatch")
    junction = s.mul(x.last, y.first)
    if s.is_zero(junction):
        return ReflectorElement(x.seq + y.seq, s)
    # the result is validated on construction
    return ReflectorElement(x.prefix + (junction,) + y.seq[1:], s)


def nu_step(s: FiniteZeroSemigroup, seq: Sequence_) -> Set[Sequence_]:
    """
    Every sequence related to ``seq`` by one elementary move in either
    direction: moving a factor u across a boundary, or merging three
    entries into two and back.
    """
    found = set()
    n = len(seq)
    factorizations = s.factorizations
    for i in range(n - 1):
        left, right = seq[i], seq[i + 1]
        # left = t u, right becomes u right
        for t, u in factorizations[left]:
            moved = s.mul(u, right)
            if not s.is_zero(moved):
                found.add(seq[:i] + (t, moved) + seq[i + 2 :])
        # right = u v, left becomes left u
        for u, v in factorizations[right]:
            moved = s.mul(left, u)
            if not s.is_zero(moved):
                found.add(seq[:i] + (moved, v) + seq[i + 2 :])
    for i in range(1, n - 1):
        # the middle entry u v is absorbed by its neighbours
        for u, v in factorizations[seq[i]]:
            left, right = s.mul(seq[i - 1], u), s.mul(v, seq[i + 1])
            if not s.is_zero(left) and not s.is_zero(right):
                found.add(seq[: i - 1] + (left, right) + seq[i + 2 :])
    for i in range(1, n):
        # split seq[i-1] = p u and seq[i] = v q, then insert u v between p and q
        for p, u in factorizations[seq[i - 1]]:
            for v, q in factorizations[seq[i]]:
                middle = s.mul(u, v)
                if not s.is_zero(middle):
                    found.add(seq[: i - 1] + (p, middle, q) + seq[i + 1 :])
    found.discard(seq)
    return {candidate for candidate in found if is_reflector_sequence(s, candidate)}


class _Search:
    """
    Breadth first exploration of one side of the equivalence search.
    """

    def __init__(self, s, start, max_length):
        self.s = s
        self.seen = {start}
        self.frontier = [start]
        self.max_length = max_length
        self.truncated = False

    @property
    def exhausted(self) -> bool:
        return not self.frontier

    def expand(self) -> List[Sequence_]:
        fresh = []
        for seq in self.frontier:
            for candidate in nu_step(self.s, seq):
                if len(candidate) > self.max_length:
                    self.truncated = True
                    continue
                if candidate not in self.seen:
                    self.seen.add(candidate)
                    fresh.append(candidate)
        self.frontier = fresh
        return fresh


def nu_equivalent(
    x: ReflectorElement,
    y: ReflectorElement,
    budget: Optional[int] = None,
    max_length: Optional[int] = None,
) -> NuVerdict:
    """
    Bidirectional search over elementary moves.

    ``distinct`` is returned only when one side's class was enumerated in
    full without hitting the length cap.
    """
    budget = Conf.NU_BUDGET if budget is None else budget
    max_length = Conf.NU_MAX_LENGTH if max_length is None else max_length
    s = x.semigroup
    if y.semigroup != s:
        raise invalid("elements come from different semigroups", "semigroup_mismatch")
    if x.seq == y.seq:
        return NuVerdict.EQUAL
    sides = [_Search(s, x.seq, max(max_length, len(x))), _Search(s, y.seq, max(max_length, len(y)))]
    while True:
        for side in sides:
            if side.exhausted and not side.truncated:
                return NuVerdict.DISTINCT
        if all(side.exhausted for side in sides):
            budget_exhausted.send(sender="homzero.reflector", budget=budget, reason="length")
            logger.info(_(f"equivalence of {x} and {y} undecided at length {max_length}"))
            return NuVerdict.UNKNOWN
        if sum(len(side.seen) for side in sides) > budget:
            budget_exhausted.send(sender="homzero.reflector", budget=budget, reason="budget")
            logger.info(_(f"equivalence of {x} and {y} undecided after {budget} sequences"))
            return NuVerdict.UNKNOWN
        active = min((side for side in sides if not side.exhausted), key=lambda side: len(side.frontier))
        other = sides[1] if active is sides[0] else sides[0]
        if any(seq in other.seen for seq in active.expand()):
            return NuVerdict.EQUAL


def reflector_action(a: ZeroModuleAction, x: ReflectorElement) -> IntMatrix:
    """
    Matrix of a -> a x_1 x_2 ... x_n on the base of ``a``.
    """
    if a.semigroup != x.semigroup:
        raise invalid("module and element come from different semigroups", "semigroup_mismatch")
    return a.compose(x.seq)


def iterate_elements(s: FiniteZeroSemigroup, max_length: int) -> Iterator[ReflectorElement]:
    """
    Every valid sequence of length at most ``max_length`` in shortlex order.
    """
    layer: List[Sequence_] = [(x,) for x in s.nonzero_elements]
    for _ in range(max_length):
        if not layer:
            return
        for seq in layer:
            yield ReflectorElement(seq, s)
        layer = [
            seq + (x,)
            for seq in layer
            for x in s.nonzero_elements
            if s.is_zero(s.mul(seq[-1], x))
        ]


def random_element(
    s: FiniteZeroSemigroup, rng: random.Random, max_length: int = 4
) -> Optional[ReflectorElement]:
    """
    Random walk through valid sequences; None when S has no nonzero element.
    """
    if not s.nonzero_elements:
        return None
    seq = [rng.choice(s.nonzero_elements)]
    for _ in range(rng.randrange(max_length)):
        options = [x for x in s.nonzero_elements if s.is_zero(s.mul(seq[-1], x))]
        if not options:
            break
        seq.append(rng.choice(options))
    return ReflectorElement(tuple(seq), s)


def parse_sequence(s: FiniteZeroSemigroup, text: str) -> ReflectorElement:
    """
    Reads comma separated element names such as ``a,b``.
    """
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise invalid("empty sequence", "empty_sequence", text)
    return ReflectorElement(tuple(s.index(name) for name in names), s)


def reflector_presentation(p: Presentation) -> Presentation:
    """
    Drops every zero relation and zero pair, leaving a presentation of the
    0-reflector.
    """
    return Presentation(p.generators, tuple(r for r in p.relations if not r.is_zero))
