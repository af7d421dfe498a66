"""
The 0-complex of a semigroup with zero, the bar complex of a plain
semigroup, and the chain maps between 0-chains and chains of the 0-reflector.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from django.utils.translation import gettext_lazy as _

from homzero.abelian import (
    AbelianGroupClass,
    ChainComplexFG,
    FGAbelianGroup,
    IntMatrix,
    cokernel,
    homology_of_complex,
)
from homzero.cluster import compute_degrees
from homzero.conf import Conf, logger
from homzero.reflector import ReflectorElement, multiply, reflector_action
from homzero.semigroup import FiniteSemigroup, FiniteZeroSemigroup, invalid
from homzero.zmodule import ZeroModuleAction


class BasisTooLarge(Exception):
    """
    A degree of the complex holds more tuples than the configured limit.
    """

    def __init__(self, degree, limit):
        self.degree = degree
        self.limit = limit
        super().__init__(degree, limit)

    def __str__(self):
        return f"degree {self.degree} holds more than {self.limit} tuples"


@dataclass(frozen=True)
class TupleBasis:
    """
    Tuples of nonzero elements with nonzero product, in lexicographic order.
    """

    n: int
    tuples: Tuple[Tuple[int, ...], ...]

    @cached_property
    def index(self) -> Dict[Tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.tuples)}

    def __len__(self):
        return len(self.tuples)


def enumerate_bases(s: FiniteSemigroup, top: int, limit: Optional[int] = None) -> List[TupleBasis]:
    """
    Bases of degrees 0..top. Degree 0 is the empty tuple.
    """
    limit = Conf.TUPLE_LIMIT if limit is None else limit
    bases = [TupleBasis(0, ((),))]
    layer = [((x,), x) for x in s.nonzero_elements]
    for n in range(1, top + 1):
        if len(layer) > limit:
            raise BasisTooLarge(n, limit)
        bases.append(TupleBasis(n, tuple(t for t, _ in layer)))
        if n == top:
            break
        # prefixes of a tuple with nonzero product have nonzero product
        layer = [
            (t + (x,), s.mul(p, x))
            for t, p in layer
            for x in s.nonzero_elements
            if not s.is_zero(s.mul(p, x))
        ]
    return bases


def enumerate_Dn(s: FiniteSemigroup, n: int) -> TupleBasis:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return enumerate_bases(s, n)[n]


def _boundary_matrix(s, a, source: TupleBasis, target: TupleBasis) -> IntMatrix:
    k = a.rank
    identity = IntMatrix.identity(k).data
    matrix = IntMatrix.zeros(k * len(target), k * len(source))
    data = matrix.data
    n = source.n
    for j, t in enumerate(source.tuples):
        columns = slice(k * j, k * (j + 1))
        if n == 1:
            data[0:k, columns] += a.matrix(t[0]).data - identity
            continue
        row = k * target.index[t[1:]]
        data[row : row + k, columns] += a.matrix(t[0]).data
        for i in range(1, n):
            merged = t[: i - 1] + (s.mul(t[i - 1], t[i]),) + t[i + 1 :]
            row = k * target.index[merged]
            data[row : row + k, columns] += (-1) ** i * identity
        row = k * target.index[t[:-1]]
        data[row : row + k, columns] += (-1) ** n * identity
    return matrix


def build_complex(s: FiniteSemigroup, a: ZeroModuleAction, top: int) -> ChainComplexFG:
    if a.semigroup != s:
        raise invalid("module acts through a different semigroup", "semigroup_mismatch")
    bases = enumerate_bases(s, top)
    groups = [a.base.power(len(basis)) for basis in bases]
    boundaries = [IntMatrix.zeros(0, a.rank)]
    for n in range(1, top + 1):
        boundaries.append(_boundary_matrix(s, a, bases[n], bases[n - 1]))
    logger.debug(_(f"complex up to degree {top} has ranks {[g.rank for g in groups]}"))
    return ChainComplexFG(groups, boundaries)


def zero_chain_complex(s: FiniteZeroSemigroup, a: ZeroModuleAction, maxdim: int) -> ChainComplexFG:
    """
    The complex of tuples with nonzero product, degrees 0..maxdim.
    """
    if not s.has_zero:
        raise invalid("the 0-complex needs a semigroup with zero", "no_zero")
    return build_complex(s, a, maxdim)


def bar_complex(s: FiniteSemigroup, a: ZeroModuleAction, maxdim: int) -> ChainComplexFG:
    """
    The standard complex on all tuples of a semigroup without distinguished zero.
    """
    if s.has_zero:
        raise invalid("the bar complex takes a semigroup without distinguished zero", "has_zero")
    return build_complex(s, a, maxdim)


def h0_zeroth(s: FiniteSemigroup, a: ZeroModuleAction) -> AbelianGroupClass:
    """
    Coinvariants: A modulo the subgroup generated by all a s - a.
    """
    identity = IntMatrix.identity(a.rank)
    parts = [a.matrix(x) - identity for x in s.nonzero_elements]
    relations = IntMatrix.hstack(*parts) if parts else IntMatrix.zeros(a.rank, 0)
    return cokernel(relations, a.base)


def zero_homology(s: FiniteZeroSemigroup, a: ZeroModuleAction, n: int) -> AbelianGroupClass:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        if a.semigroup != s:
            raise invalid("module acts through a different semigroup", "semigroup_mismatch")
        return h0_zeroth(s, a)
    return homology_of_complex(zero_chain_complex(s, a, n + 1), n)


def bar_homology(s: FiniteSemigroup, a: ZeroModuleAction, n: int) -> AbelianGroupClass:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return homology_of_complex(bar_complex(s, a, n + 1), n)


def homology_groups(
    s: FiniteSemigroup, a: ZeroModuleAction, maxdim: int, jobs: Optional[int] = None
) -> Dict[int, AbelianGroupClass]:
    """
    All groups of degrees 0..maxdim, one task per degree.
    """
    func = zero_homology if s.has_zero else bar_homology
    return compute_degrees(func, range(maxdim + 1), (s, a), jobs=jobs)


@dataclass
class Chain:
    """
    Formal sum of ``vector [key]`` with keys tuples of semigroup indices or
    of reflector elements. Coefficients live in ``base``.
    """

    base: FGAbelianGroup
    terms: Dict[tuple, Tuple[int, ...]] = field(default_factory=dict)

    @classmethod
    def generator(cls, base: FGAbelianGroup, key: tuple, vector: Sequence[int]) -> "Chain":
        chain = cls(base)
        chain.add(key, vector)
        return chain

    def add(self, key: tuple, vector: Sequence[int], sign: int = 1):
        current = self.terms.get(key, self.base.zero())
        updated = self.base.reduce([c + sign * int(v) for c, v in zip(current, vector)])
        if any(updated):
            self.terms[key] = updated
        else:
            self.terms.pop(key, None)

    def __iadd__(self, other: "Chain"):
        for key, vector in other.terms.items():
            self.add(key, vector)
        return self

    def __add__(self, other: "Chain") -> "Chain":
        result = Chain(self.base, dict(self.terms))
        result += other
        return result

    def __sub__(self, other: "Chain") -> "Chain":
        result = Chain(self.base, dict(self.terms))
        for key, vector in other.terms.items():
            result.add(key, vector, -1)
        return result

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.base == other.base and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self) -> Iterable[Tuple[tuple, Tuple[int, ...]]]:
        return sorted(self.terms.items(), key=lambda item: _sort_key(item[0]))


def _sort_key(key):
    return tuple(x.seq if isinstance(x, ReflectorElement) else (x,) for x in key)


def boundary_of_chain(s: FiniteZeroSemigroup, a: ZeroModuleAction, chain: Chain) -> Chain:
    """
    The 0-complex boundary applied to a chain of tuples.
    """
    result = Chain(a.base)
    for t, vector in chain.terms.items():
        n = len(t)
        if n == 0:
            continue
        moved = a.apply(t[0], vector)
        if n == 1:
            result.add((), moved)
            result.add((), vector, -1)
            continue
        result.add(t[1:], moved)
        for i in range(1, n):
            result.add(t[: i - 1] + (s.mul(t[i - 1], t[i]),) + t[i + 1 :], vector, (-1) ** i)
        result.add(t[:-1], vector, (-1) ** n)
    return result


def delta_map(a: ZeroModuleAction, chain: Chain) -> Chain:
    """
    Boundary of the standard complex of the 0-reflector on reflector chains.
    """
    result = Chain(a.base)
    for key, vector in chain.terms.items():
        n = len(key)
        if n == 0:
            continue
        moved = a.base.reduce(reflector_action(a, key[0]).apply(vector))
        if n == 1:
            result.add((), moved)
            result.add((), vector, -1)
            continue
        result.add(key[1:], moved)
        for i in range(1, n):
            merged = key[: i - 1] + (multiply(key[i - 1], key[i]),) + key[i + 1 :]
            result.add(merged, vector, (-1) ** i)
        result.add(key[:-1], vector, (-1) ** n)
    return result


def epsilon_map(s: FiniteZeroSemigroup, chain: Chain) -> Chain:
    """
    Sends a [s_1, ..., s_n] to a [<s_1>, ..., <s_n>].
    """
    result = Chain(chain.base)
    for t, vector in chain.terms.items():
        result.add(tuple(ReflectorElement.singleton(s, x) for x in t), vector)
    return result


def beta_map(s: FiniteZeroSemigroup, a: ZeroModuleAction, chain: Chain) -> Chain:
    """
    Left inverse of epsilon in degrees 2 and up, extended by linearity.

    A generator a [X^1, ..., X^n] survives only when X^2..X^(n-1) are single
    letters and x^1 x^2 ... x^n is nonzero, where x^1 is the last letter of
    X^1 and x^n the first letter of X^n. It then goes to
    (a X^1 without its last letter) [x^1, ..., x^n].
    """
    result = Chain(a.base)
    for key, vector in chain.terms.items():
        n = len(key)
        if n < 2:
            raise ValueError("beta is defined from degree 2 on")
        if any(len(x) != 1 for x in key[1:-1]):
            continue
        letters = (key[0].last,) + tuple(x.first for x in key[1:])
        if s.is_zero(s.product(letters)):
            continue
        coefficient = a.base.reduce(a.compose(key[0].prefix).apply(vector))
        result.add(letters, coefficient)
    return result
