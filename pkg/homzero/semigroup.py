"""
Finite semigroups given by Cayley tables, with or without a zero.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from homzero.conf import logger


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a structural check with an optional witness.
    """

    holds: bool
    witness: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.holds


def invalid(message: str, code: str, witness=None) -> ValidationError:
    return ValidationError(message, code=code, params={"witness": witness})


@dataclass(frozen=True)
class FiniteSemigroup:
    """
    Semigroup on 0..n-1 with ``table[s][t]`` the index of st.
    """

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]

    has_zero = False

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def nonzero_elements(self) -> range:
        return range(self.size)

    def is_zero(self, s: int) -> bool:
        return False

    def mul(self, s: int, t: int) -> int:
        return self.table[s][t]

    def product(self, seq: Sequence[int]) -> int:
        if not seq:
            raise ValueError("empty product")
        result = seq[0]
        for s in seq[1:]:
            result = self.table[result][s]
        return result

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise invalid(f"unknown element {name!r}", "unknown_element", name)

    def name(self, s: int) -> str:
        return self.names[s]

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.size, self.size)

    @cached_property
    def factorizations(self) -> Dict[int, Tuple[Tuple[int, int], ...]]:
        """
        For each element t the pairs of nonzero (u, v) with uv = t.
        """
        found: Dict[int, List[Tuple[int, int]]] = {t: [] for t in range(self.size)}
        for u in self.nonzero_elements:
            for v in self.nonzero_elements:
                found[self.table[u][v]].append((u, v))
        return {t: tuple(pairs) for t, pairs in found.items()}

    def validate(self) -> "FiniteSemigroup":
        """
        Checks shape, index range and associativity. Returns self.
        """
        n = self.size
        if n == 0:
            raise invalid("a semigroup needs at least one element", "empty")
        if len(set(self.names)) != n:
            raise invalid("element names must be distinct", "duplicate_name")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise invalid(f"table is not {n}x{n}", "shape")
        for s, row in enumerate(self.table):
            for t, st in enumerate(row):
                if not 0 <= st < n:
                    raise invalid(f"product of {s} and {t} is out of range", "range", (s, t))
        table = self.array
        # lhs[s, t, u] = (st)u and rhs[s, t, u] = s(tu)
        lhs = table[table]
        rhs = table[:, table]
        broken = np.argwhere(lhs != rhs)
        if len(broken):
            witness = tuple(int(x) for x in broken[0])
            raise invalid(
                f"not associative at {tuple(self.names[x] for x in witness)}",
                "associativity",
                witness,
            )
        return self

    def nilpotency_degree(self) -> Optional[int]:
        """
        Least k with S^k = {0}, None when there is none.
        """
        if not self.has_zero:
            return None
        power = set(range(self.size))
        everything = power
        for k in range(1, self.size + 2):
            if power == {0}:
                return k
            following = {self.table[x][s] for x in power for s in everything}
            if following == power:
                return None
            power = following
        return None

    def relabel(self, names: Sequence[str]) -> "FiniteSemigroup":
        return type(self)(tuple(names), self.table)


@dataclass(frozen=True)
class FiniteZeroSemigroup(FiniteSemigroup):
    """
    Semigroup whose element 0 is a two-sided zero.
    """

    components: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    has_zero = True

    @property
    def nonzero_elements(self) -> range:
        return range(1, self.size)

    def is_zero(self, s: int) -> bool:
        return s == 0

    def validate(self) -> "FiniteZeroSemigroup":
        super().validate()
        for s in range(self.size):
            if self.table[0][s] or self.table[s][0]:
                raise invalid(f"{self.names[0]} does not absorb {self.names[s]}", "zero", (0, s))
        return self

    def restrict(self, indices: Sequence[int]) -> Tuple["FiniteZeroSemigroup", Tuple[int, ...]]:
        """
        Sub-semigroup on zero plus the given nonzero elements.

        Returns it with the list mapping its indices to indices of self.
        """
        outside = sorted(x for x in set(indices) if not 0 <= x < self.size)
        if outside:
            raise invalid(f"no element with index {outside[0]}", "range", outside[0])
        kept = (0,) + tuple(sorted(set(indices) - {0}))
        position = {s: i for i, s in enumerate(kept)}
        table = []
        for s in kept:
            row = []
            for t in kept:
                st = self.table[s][t]
                if st not in position:
                    raise invalid(
                        f"{self.names[s]}{self.names[t]} leaves the subset", "not_closed", (s, t)
                    )
                row.append(position[st])
            table.append(tuple(row))
        names = tuple(self.names[s] for s in kept)
        return FiniteZeroSemigroup(names, tuple(table)), kept


def validate(table, names=None, zero: bool = True) -> FiniteSemigroup:
    """
    Builds and checks a semigroup from a Cayley table. With ``zero`` the
    element at index 0 must be a two-sided zero.
    """
    table = tuple(tuple(int(x) for x in row) for row in table)
    if not table:
        raise invalid("a semigroup needs at least one element", "empty")
    if names is None:
        names = ("0",) + tuple(f"s{i}" for i in range(1, len(table))) if zero else tuple(
            f"s{i}" for i in range(len(table))
        )
    kind = FiniteZeroSemigroup if zero else FiniteSemigroup
    return kind(tuple(str(n) for n in names), table).validate()


def is_categorical_at_zero(s: FiniteZeroSemigroup) -> Verdict:
    """
    Holds unless some nonzero x, y, z have xy != 0, yz != 0 and xyz = 0.
    """
    table = s.array
    nonzero = table != 0
    triple = table[table]
    mask = nonzero[:, :, None] & nonzero[None, :, :] & (triple == 0)
    hits = np.argwhere(mask)
    if len(hits):
        return Verdict(False, tuple(int(x) for x in hits[0]), "xy and yz are nonzero but xyz is zero")
    return Verdict(True)


def zero_direct_union(parts: Sequence[FiniteZeroSemigroup]) -> FiniteZeroSemigroup:
    """
    Disjoint union of the parts with their zeros identified; mixed products are 0.
    """
    if not parts:
        raise invalid("a 0-direct union needs at least one part", "empty")
    names = ["0"]
    offsets = []
    for part in parts:
        offsets.append(len(names))
        names += list(part.names[1:])
    if len(set(names)) != len(names):
        names = ["0"] + [
            f"{name}#{k}" for k, part in enumerate(parts) for name in part.names[1:]
        ]
    n = len(names)
    table = [[0] * n for _ in range(n)]
    components = []
    for part, offset in zip(parts, offsets):
        members = tuple(range(offset, offset + part.size - 1))
        components.append(members)
        for s in part.nonzero_elements:
            for t in part.nonzero_elements:
                st = part.mul(s, t)
                table[offset + s - 1][offset + t - 1] = offset + st - 1 if st else 0
    return FiniteZeroSemigroup(
        tuple(names), tuple(tuple(row) for row in table), components=tuple(components)
    )


def adjoin_zero(s: FiniteSemigroup, name: str = "0") -> FiniteZeroSemigroup:
    if name in s.names:
        raise invalid(f"element name {name!r} already taken", "duplicate_name", name)
    n = s.size + 1
    table = [tuple(0 for _ in range(n))]
    for row in s.table:
        table.append((0,) + tuple(x + 1 for x in row))
    return FiniteZeroSemigroup((name,) + s.names, tuple(table))


def adjoin_identity(s: FiniteSemigroup, name: str = "1") -> FiniteSemigroup:
    """
    Appends a fresh identity as the last element.
    """
    if name in s.names:
        raise invalid(f"element name {name!r} already taken", "duplicate_name", name)
    n = s.size
    table = [tuple(row) + (i,) for i, row in enumerate(s.table)]
    table.append(tuple(range(n)) + (n,))
    return type(s)(s.names + (name,), tuple(table))


def rees_quotient(s: FiniteSemigroup, ideal: Sequence[int]) -> FiniteZeroSemigroup:
    """
    Collapses a two-sided ideal into a single zero.
    """
    ideal = set(ideal)
    if s.has_zero and ideal and 0 not in ideal:
        raise invalid("an ideal of a semigroup with zero contains zero", "not_ideal", (0,))
    for x in sorted(ideal):
        for y in range(s.size):
            for product, pair in ((s.mul(x, y), (x, y)), (s.mul(y, x), (y, x))):
                if product not in ideal:
                    raise invalid(
                        f"{s.names[pair[0]]}{s.names[pair[1]]} leaves the ideal", "not_ideal", pair
                    )
    if not ideal:
        return adjoin_zero(s) if not s.has_zero else s
    rest = [x for x in range(s.size) if x not in ideal]
    position = {x: i + 1 for i, x in enumerate(rest)}
    zero_name = s.names[0] if s.has_zero else "0"
    names = (zero_name,) + tuple(s.names[x] for x in rest)
    n = len(names)
    table = [(0,) * n]
    for x in rest:
        table.append((0,) + tuple(position.get(s.mul(x, y), 0) for y in rest))
    logger.debug(_(f"Rees quotient by {len(ideal)} elements leaves {n} elements"))
    return FiniteZeroSemigroup(names, tuple(table))


def null_semigroup(k: int) -> FiniteZeroSemigroup:
    """
    Zero plus k elements all of whose products vanish.
    """
    n = k + 1
    return FiniteZeroSemigroup(
        ("0",) + tuple(f"x{i}" for i in range(1, n)), tuple((0,) * n for _ in range(n))
    )


def monogenic_nilpotent(k: int) -> FiniteZeroSemigroup:
    """
    {0, a, a^2, ..., a^(k-1)} with a^k = 0.
    """
    if k < 1:
        raise ValueError("k must be positive")
    names = ("0",) + tuple("a" if i == 1 else f"a^{i}" for i in range(1, k))
    table = [[0] * k for _ in range(k)]
    for i in range(1, k):
        for j in range(1, k):
            table[i][j] = i + j if i + j < k else 0
    return FiniteZeroSemigroup(names, tuple(tuple(row) for row in table))


def cyclic_group(k: int) -> FiniteSemigroup:
    names = ("e",) + tuple("g" if i == 1 else f"g^{i}" for i in range(1, k))
    return FiniteSemigroup(
        names, tuple(tuple((i + j) % k for j in range(k)) for i in range(k))
    )


def from_function(
    elements: Sequence, op: Callable, zero=None, names: Optional[Sequence[str]] = None
) -> FiniteSemigroup:
    """
    Tabulates ``op`` on a finite carrier. A given ``zero`` is moved to index 0.
    """
    elements = list(elements)
    if zero is not None:
        elements.remove(zero)
        elements.insert(0, zero)
    position = {x: i for i, x in enumerate(elements)}
    table = []
    for x in elements:
        row = []
        for y in elements:
            xy = op(x, y)
            if xy not in position:
                raise invalid(f"{x!r}*{y!r} leaves the carrier", "not_closed", (x, y))
            row.append(position[xy])
        table.append(tuple(row))
    names = tuple(names) if names is not None else tuple(str(x) for x in elements)
    kind = FiniteSemigroup if zero is None else FiniteZeroSemigroup
    return kind(names, tuple(table)).validate()


def free_product_model(*parts: FiniteSemigroup) -> FiniteZeroSemigroup:
    """
    Categorical at zero semigroup whose 0-reflector is the free product of
    the parts: their 0-direct union after adjoining a zero to each.
    """
    return zero_direct_union([adjoin_zero(part) for part in parts])
