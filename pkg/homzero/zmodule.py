"""
Right 0-modules: an abelian group A with a right action of the nonzero
elements of a semigroup.

Vectors are columns, so ``a * s`` is ``M(s) @ a`` and the module law reads
``M(t) @ M(s) == M(st)`` whenever ``st`` is nonzero.
"""
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Tuple

from django.utils.translation import gettext_lazy as _

from homzero.abelian import FGAbelianGroup, IntMatrix
from homzero.conf import logger
from homzero.semigroup import FiniteSemigroup, FiniteZeroSemigroup, Verdict, invalid


@dataclass(frozen=True, eq=False)
class ZeroModuleAction:
    """
    Action matrices for every nonzero element, reduced against the base group.
    """

    base: FGAbelianGroup
    semigroup: FiniteSemigroup
    act: Mapping[int, IntMatrix] = field(repr=False)

    def __post_init__(self):
        r = self.base.rank
        for s in self.semigroup.nonzero_elements:
            if s not in self.act:
                raise invalid(
                    f"no action given for {self.semigroup.names[s]}", "missing_action", s
                )
            if self.act[s].shape != (r, r):
                raise invalid(
                    f"action of {self.semigroup.names[s]} has shape {self.act[s].shape}",
                    "shape",
                    s,
                )

    @property
    def rank(self) -> int:
        return self.base.rank

    def matrix(self, s: int) -> IntMatrix:
        return self.act[s]

    def apply(self, s: int, vector: Sequence[int]) -> Tuple[int, ...]:
        return self.base.reduce(self.act[s].apply(vector))

    def compose(self, seq: Sequence[int]) -> IntMatrix:
        """
        Matrix of a -> a s_1 s_2 ... s_n.
        """
        result = IntMatrix.identity(self.rank)
        for s in seq:
            result = self.act[s] @ result
        return result

    def agrees(self, left: IntMatrix, right: IntMatrix) -> bool:
        """
        Equality of two endomorphisms of the base group.
        """
        difference = left - right
        return all(self.base.is_zero(difference.column(j)) for j in range(self.rank))

    def __eq__(self, other):
        if not isinstance(other, ZeroModuleAction):
            return NotImplemented
        return (
            self.base == other.base
            and self.semigroup == other.semigroup
            and all(
                self.agrees(self.act[s], other.act[s]) for s in self.semigroup.nonzero_elements
            )
        )

    __hash__ = None


def make_action(
    semigroup: FiniteSemigroup, base: FGAbelianGroup, act: Mapping[int, IntMatrix]
) -> ZeroModuleAction:
    return ZeroModuleAction(base, semigroup, dict(act))


def validate_action(m: ZeroModuleAction) -> Verdict:
    """
    Checks the module law on every pair with nonzero product and that each
    matrix respects the torsion of the base group.
    """
    s = m.semigroup
    relations = m.base.relation_matrix()
    for x in s.nonzero_elements:
        moved = m.act[x] @ relations
        for j in range(moved.cols):
            if not m.base.is_zero(moved.column(j)):
                return Verdict(False, (x,), "action does not preserve the torsion relations")
    for x in s.nonzero_elements:
        for y in s.nonzero_elements:
            xy = s.mul(x, y)
            if s.is_zero(xy):
                continue
            if not m.agrees(m.act[y] @ m.act[x], m.act[xy]):
                return Verdict(False, (x, y), "(a x) y differs from a (xy)")
    return Verdict(True)


def trivial_module(s: FiniteSemigroup, base: FGAbelianGroup) -> ZeroModuleAction:
    identity = IntMatrix.identity(base.rank)
    return ZeroModuleAction(base, s, {x: identity for x in s.nonzero_elements})


def zero_module(s: FiniteSemigroup, base: FGAbelianGroup) -> ZeroModuleAction:
    """
    Every nonzero element acts as 0.
    """
    null = IntMatrix.zeros(base.rank, base.rank)
    return ZeroModuleAction(base, s, {x: null for x in s.nonzero_elements})


def right_ideal_module(s: FiniteSemigroup, generator: int, modulus: int = 0) -> ZeroModuleAction:
    """
    Free Z/modulus module on the nonzero elements of generator * S^1 with
    e_y * s = e_(ys) when ys is nonzero and 0 otherwise.
    """
    if s.is_zero(generator):
        raise invalid("generator must be nonzero", "zero_generator", generator)
    basis = {generator}
    basis.update(
        s.mul(generator, u) for u in range(s.size) if not s.is_zero(s.mul(generator, u))
    )
    basis = sorted(basis)
    position = {y: i for i, y in enumerate(basis)}
    base = FGAbelianGroup((modulus,) * len(basis))
    act = {}
    for x in s.nonzero_elements:
        matrix = IntMatrix.zeros(len(basis), len(basis))
        for y in basis:
            yx = s.mul(y, x)
            if not s.is_zero(yx):
                matrix.data[position[yx], position[y]] = 1
        act[x] = matrix
    return ZeroModuleAction(base, s, act)


def direct_sum(*modules: ZeroModuleAction) -> ZeroModuleAction:
    s = modules[0].semigroup
    for m in modules[1:]:
        if m.semigroup != s:
            raise invalid("summands act through different semigroups", "semigroup_mismatch")
    base = modules[0].base.direct_sum(*(m.base for m in modules[1:]))
    act = {}
    for x in s.nonzero_elements:
        matrix = IntMatrix.zeros(base.rank, base.rank)
        offset = 0
        for m in modules:
            r = m.rank
            matrix.data[offset : offset + r, offset : offset + r] = m.act[x].data
            offset += r
        act[x] = matrix
    return ZeroModuleAction(base, s, act)


def from_presentation(
    s: FiniteSemigroup, relations: IntMatrix, act: Mapping[int, IntMatrix]
) -> ZeroModuleAction:
    """
    Module on Z^r / (column span of relations), rewritten in Smith coordinates.
    """
    base, projection, section = FGAbelianGroup.from_relations(relations)
    converted = {x: projection @ act[x] @ section for x in s.nonzero_elements}
    logger.debug(_(f"module presented by {relations.cols} relations has moduli {base.moduli}"))
    return ZeroModuleAction(base, s, converted)


def restrict_to_part(
    m: ZeroModuleAction, part: Iterable[int]
) -> Tuple[FiniteZeroSemigroup, ZeroModuleAction]:
    """
    Restricts the action to a closed part of a semigroup with zero, for
    example a component of a 0-direct union. Returns the part as a standalone
    semigroup together with the restricted module.
    """
    if not isinstance(m.semigroup, FiniteZeroSemigroup):
        raise invalid("restriction needs a semigroup with zero", "no_zero")
    sub, kept = m.semigroup.restrict(part)
    act = {i: m.act[x] for i, x in enumerate(kept) if i}
    return sub, ZeroModuleAction(m.base, sub, act)
