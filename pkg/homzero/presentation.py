"""
Semigroup presentations with zero pairs, the graph of adjacent letters, and
the two routes from a presentation to a finite semigroup with zero.
"""
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from django.utils.translation import gettext_lazy as _

from homzero.conf import logger
from homzero.rewriting import RewritingSystem, Undecided, Word, factors, shortlex
from homzero.semigroup import FiniteZeroSemigroup, Verdict, invalid
from homzero.signals import budget_exhausted

COMPLEMENT_OF_DELTA = "complement-of-delta"


@dataclass(frozen=True)
class Relation:
    """
    ``lhs = rhs``; a missing rhs stands for the zero.
    """

    lhs: Word
    rhs: Optional[Word] = None

    @property
    def is_zero(self) -> bool:
        return self.rhs is None

    def words(self) -> Tuple[Word, ...]:
        return (self.lhs,) if self.rhs is None else (self.lhs, self.rhs)


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relations: Tuple[Relation, ...] = ()
    gamma: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise invalid("generator names must be distinct", "duplicate_name")
        for name in self.generators:
            if not name or name == "0" or re.search(r"[\s.,=#]", name):
                raise invalid(f"bad generator name {name!r}", "bad_name", name)
        for k, relation in enumerate(self.relations):
            for word in relation.words():
                if not word or any(not 0 <= g < n for g in word):
                    raise invalid(f"relation {k} uses an empty word or unknown letter", "bad_word", k)
            if not relation.is_zero and len(relation.lhs) < len(relation.rhs):
                raise invalid(f"relation {k} is not normalized", "not_normalized", k)
        for i, j in self.gamma:
            if not (0 <= i < n and 0 <= j < n):
                raise invalid(f"zero pair {(i, j)} uses an unknown letter", "bad_word", (i, j))

    @classmethod
    def build(cls, generators, relations=(), gamma=()) -> "Presentation":
        """
        Normalizes every nonzero relation to l(lhs) >= l(rhs).
        """
        normalized = []
        for lhs, rhs in relations:
            lhs = tuple(lhs)
            rhs = None if rhs is None else tuple(rhs)
            if rhs is not None and len(lhs) < len(rhs):
                lhs, rhs = rhs, lhs
            normalized.append(Relation(lhs, rhs))
        return cls(tuple(generators), tuple(normalized), frozenset(tuple(p) for p in gamma))

    @property
    def size(self) -> int:
        return len(self.generators)

    @property
    def nonzero_relations(self) -> Tuple[Tuple[Word, Word], ...]:
        return tuple((r.lhs, r.rhs) for r in self.relations if not r.is_zero)

    @property
    def zero_relations(self) -> Tuple[Word, ...]:
        return tuple(r.lhs for r in self.relations if r.is_zero)

    @property
    def zero_pairs(self) -> FrozenSet[Tuple[int, int]]:
        """
        Gamma together with every zero relation of length two.
        """
        return self.gamma | frozenset(w for w in self.zero_relations if len(w) == 2)

    @property
    def is_form3(self) -> bool:
        return all(len(w) == 2 for w in self.zero_relations)

    def render_word(self, word: Word) -> str:
        return ".".join(self.generators[g] for g in word)

    def word(self, text: str) -> Word:
        return parse_word(self.generators, text)

    def render(self) -> str:
        lines = ["generators = " + ", ".join(self.generators)]
        for relation in self.relations:
            rhs = "0" if relation.is_zero else self.render_word(relation.rhs)
            lines.append(f"{self.render_word(relation.lhs)} = {rhs}")
        if self.gamma:
            pairs = sorted(self.gamma)
            lines.append("gamma = " + ", ".join(self.render_word(p) for p in pairs))
        return "\n".join(lines) + "\n"


def parse_word(generators: Sequence[str], text: str) -> Word:
    """
    Reads dotted names such as ``a.b.c``. When all names are single
    characters, juxtaposition ``abc`` is accepted as well.
    """
    position = {name: i for i, name in enumerate(generators)}
    text = text.strip()
    if not text:
        raise invalid("empty word", "bad_word", text)
    letters = []
    for token in text.split("."):
        token = token.strip()
        if token in position:
            letters.append(position[token])
        elif token and all(len(g) == 1 for g in generators) and all(c in position for c in token):
            letters += [position[c] for c in token]
        else:
            raise invalid(f"unknown generator {token!r} in {text!r}", "unknown_generator", token)
    return tuple(letters)


def parse_presentation(text: str) -> Presentation:
    """
    Reads the line based presentation format::

        generators = a, b, c, d
        a.b = c.d
        a.a = 0
        gamma = b.a, d.c
    """
    generators: Optional[List[str]] = None
    relations = []
    gamma = set()
    complement = False
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count("=") != 1:
            raise invalid(f"line {number}: expected exactly one '='", "syntax", number)
        key, value = (part.strip() for part in line.split("="))
        if key == "generators":
            generators = [name.strip() for name in value.split(",") if name.strip()]
            continue
        if generators is None:
            raise invalid(f"line {number}: generators must come first", "syntax", number)
        if key == "gamma":
            if value == COMPLEMENT_OF_DELTA:
                complement = True
                continue
            for pair in value.split(","):
                word = parse_word(generators, pair)
                if len(word) != 2:
                    raise invalid(f"line {number}: zero pairs have two letters", "syntax", number)
                gamma.add(word)
            continue
        lhs = parse_word(generators, key)
        rhs = None if value == "0" else parse_word(generators, value)
        relations.append((lhs, rhs))
    if generators is None:
        raise invalid("no generators line", "syntax")
    p = Presentation.build(generators, relations, gamma)
    if complement:
        if gamma:
            raise invalid("explicit pairs and complement-of-delta exclude each other", "syntax")
        p = cat0_from_graph(p)
    return p


def rewriting_system(
    p: Presentation, max_length: Optional[int] = None, budget: Optional[int] = None
) -> RewritingSystem:
    return RewritingSystem(p.nonzero_relations, max_length=max_length, budget=budget)


def rewrite_engine(
    p: Presentation, w: Word, max_length: Optional[int] = None, budget: Optional[int] = None
) -> Word:
    """
    Shortlex-minimal representative of the class of w under the nonzero
    relations. Raises Undecided when the class cannot be closed in bounds.
    """
    return rewriting_system(p, max_length, budget).representative(tuple(w))


def gamma_sets(p: Presentation, g: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    Letters j with (j, g) a zero pair, and letters j with (g, j) a zero pair.
    """
    if not 0 <= g < p.size:
        raise ValueError(f"generator {g} out of range")
    pairs = p.zero_pairs
    left = frozenset(j for j in range(p.size) if (j, g) in pairs)
    right = frozenset(j for j in range(p.size) if (g, j) in pairs)
    return left, right


def check_cat0_criterion(p: Presentation) -> Verdict:
    """
    For each relation the first letters of both sides share their left zero
    pairs and the last letters share their right zero pairs.
    """
    if not p.is_form3:
        raise invalid("zero relations must be pairs of letters", "not_form3")
    for k, (lhs, rhs) in enumerate(p.nonzero_relations):
        if gamma_sets(p, lhs[0])[0] != gamma_sets(p, rhs[0])[0]:
            return Verdict(False, (k, "left"), f"first letters of relation {k} differ on the left")
        if gamma_sets(p, lhs[-1])[1] != gamma_sets(p, rhs[-1])[1]:
            return Verdict(False, (k, "right"), f"last letters of relation {k} differ on the right")
    return Verdict(True)


@dataclass(frozen=True, eq=False)
class DeltaGraph:
    """
    Letters as vertices, an edge (i, j) whenever ij occurs in a relation.
    """

    graph: nx.DiGraph

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.graph.nodes))

    @property
    def edges(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(self.graph.edges)

    @property
    def entrances(self) -> FrozenSet[int]:
        return frozenset(v for v in self.graph.nodes if not self.graph.in_degree(v))

    @property
    def exits(self) -> FrozenSet[int]:
        return frozenset(v for v in self.graph.nodes if not self.graph.out_degree(v))


def delta_graph(relations: Iterable[Tuple[Word, Word]], generators: int) -> DeltaGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(generators))
    for relation in relations:
        for word in relation:
            graph.add_edges_from(zip(word, word[1:]))
    return DeltaGraph(graph)


def entrance_exit_check(p: Presentation) -> Verdict:
    """
    Every relation side must start at an entrance and end at an exit.
    """
    g = delta_graph(p.nonzero_relations, p.size)
    entrances, exits = g.entrances, g.exits
    for k, (lhs, rhs) in enumerate(p.nonzero_relations):
        for word in (lhs, rhs):
            if word[0] not in entrances:
                return Verdict(False, (k, word[0]), f"{p.generators[word[0]]} is not an entrance")
            if word[-1] not in exits:
                return Verdict(False, (k, word[-1]), f"{p.generators[word[-1]]} is not an exit")
    return Verdict(True)


def longest_path(g: DeltaGraph) -> int:
    """
    Number of edges on the longest path. Refuses graphs with a circuit.
    """
    if not nx.is_directed_acyclic_graph(g.graph):
        cycle = tuple(edge[:2] for edge in nx.find_cycle(g.graph))
        raise invalid("the letter graph has a circuit", "circuit", cycle)
    return nx.dag_longest_path_length(g.graph)


def vanishing_bound(p: Presentation) -> int:
    """
    l0 + 1: words longer than this vanish in the graph quotient, and so does
    the 0-homology above it.
    """
    return longest_path(delta_graph(p.nonzero_relations, p.size)) + 1


def zero_relations_only(p: Presentation) -> bool:
    return not p.nonzero_relations and p.is_form3


def cat0_from_graph(p: Presentation) -> Presentation:
    """
    Adds as zero pairs every pair of letters that is not an edge of the graph.
    """
    if p.gamma or p.zero_relations:
        raise invalid("the presentation already has zero relations", "has_gamma")
    verdict = entrance_exit_check(p)
    if not verdict:
        raise invalid(verdict.reason, "entrance_exit", verdict.witness)
    edges = delta_graph(p.nonzero_relations, p.size).edges
    gamma = frozenset(pair for pair in product(range(p.size), repeat=2) if pair not in edges)
    logger.debug(_(f"graph quotient has {len(gamma)} zero pairs"))
    return Presentation(p.generators, p.relations, gamma)


def _table(p: Presentation, representatives: List[Word], multiply) -> FiniteZeroSemigroup:
    position = {rep: i + 1 for i, rep in enumerate(representatives)}
    n = len(representatives) + 1
    table = [tuple(0 for _ in range(n))]
    for x in representatives:
        table.append((0,) + tuple(position.get(multiply(x, y), 0) for y in representatives))
    names = ("0",) + tuple(p.render_word(rep) for rep in representatives)
    return FiniteZeroSemigroup(names, tuple(table)).validate()


def ideal_quotient(
    p: Presentation, max_length: Optional[int] = None, budget: Optional[int] = None
) -> FiniteZeroSemigroup:
    """
    Collapses the ideal of words that are not factors of any relation word.

    The remaining classes are those of factors of words equal to a relation
    side; a product survives when it is again such a factor.
    """
    if p.gamma or p.zero_relations:
        raise invalid("the ideal route takes a presentation without zero relations", "has_gamma")
    system = rewriting_system(p, max_length, budget)
    closure: Set[Word] = set()
    for lhs, _rhs in p.nonzero_relations:
        for word in system.class_of(lhs):
            closure.update(factors(word))
    for g in range(p.size):
        if (g,) not in closure:
            raise invalid(
                f"generator {p.generators[g]} lies in the collapsed ideal", "generator_in_ideal", g
            )
    representatives = sorted({system.representative(w) for w in closure}, key=shortlex)

    def multiply(x: Word, y: Word) -> Optional[Word]:
        word = x + y
        return system.representative(word) if word in closure else None

    s = _table(p, representatives, multiply)
    logger.info(_(f"ideal quotient has {s.size} elements"))
    return s


def gamma_quotient(
    p: Presentation, max_length: Optional[int] = None, budget: Optional[int] = None
) -> FiniteZeroSemigroup:
    """
    Finite table of a presentation with zero pairs.

    A class is zero when one of its words contains a zero pair. Nonzero
    elements are found layer by layer among words without zero pairs; longer
    words only extend nonzero ones.
    """
    if not p.is_form3:
        raise invalid("zero relations must be pairs of letters", "not_form3")
    system = rewriting_system(p, None, budget)
    bound = max(system.max_length, p.size + 1) if max_length is None else max_length
    pairs = p.zero_pairs
    zero_class: Dict[Word, bool] = {}

    def is_zero(word: Word) -> bool:
        representative = system.representative(word)
        if representative not in zero_class:
            zero_class[representative] = any(
                any(pair in pairs for pair in zip(w, w[1:])) for w in system.class_of(word)
            )
        return zero_class[representative]

    representatives = set()
    layer = [(g,) for g in range(p.size)]
    length = 1
    while layer:
        if length > bound:
            budget_exhausted.send(sender="homzero.presentation", budget=system.budget, reason="length")
            raise Undecided(f"nonzero words longer than {bound} letters")
        alive = [w for w in layer if not is_zero(w)]
        representatives.update(system.representative(w) for w in alive)
        layer = [w + (g,) for w in alive for g in range(p.size) if (w[-1], g) not in pairs]
        length += 1
    for k, (lhs, _rhs) in enumerate(p.nonzero_relations):
        if is_zero(lhs):
            raise invalid(f"relation {k} equates two zero words", "zero_relation_in_disguise", k)

    def multiply(x: Word, y: Word) -> Optional[Word]:
        if (x[-1], y[0]) in pairs or is_zero(x + y):
            return None
        return system.representative(x + y)

    s = _table(p, sorted(representatives, key=shortlex), multiply)
    logger.info(_(f"zero pair quotient has {s.size} elements"))
    return s


def generator_elements(
    p: Presentation, s: FiniteZeroSemigroup, max_length: Optional[int] = None,
    budget: Optional[int] = None,
) -> Tuple[int, ...]:
    """
    Index in a quotient table of every generator, 0 when it vanishes.
    """
    system = rewriting_system(p, max_length, budget)
    positions = {name: i for i, name in enumerate(s.names)}
    return tuple(
        positions.get(p.render_word(system.representative((g,))), 0) for g in range(p.size)
    )


def saturate_gamma(p: Presentation, s: FiniteZeroSemigroup) -> Presentation:
    """
    Same nonzero relations with every pair of letters whose product vanishes
    in the quotient s as a zero pair.
    """
    if not p.is_form3:
        raise invalid("zero relations must be pairs of letters", "not_form3")
    elements = generator_elements(p, s)
    gamma = frozenset(
        (i, j)
        for i, j in product(range(p.size), repeat=2)
        if s.is_zero(s.mul(elements[i], elements[j]))
    )
    relations = tuple(r for r in p.relations if not r.is_zero)
    return Presentation(p.generators, relations, gamma)
