"""
Exact integer linear algebra for finitely generated abelian groups.

Matrices are numpy arrays of ``dtype=object`` so every entry stays a Python
``int`` and never overflows.
"""
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from django.utils.translation import gettext_lazy as _

from homzero.conf import Conf, logger
from homzero.signals import pre_homology


class IntMatrix:
    """
    Dense integer matrix backed by an object array.
    """

    __slots__ = ("data",)

    def __init__(self, data):
        data = np.asarray(data, dtype=object)
        if data.ndim != 2:
            raise ValueError(f"IntMatrix needs two dimensions, got {data.ndim}")
        self.data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(np.zeros((rows, cols), dtype=object))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(_identity(size))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None):
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        matrix = cls.zeros(len(rows), cols)
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
            for j, entry in enumerate(row):
                matrix.data[i, j] = int(entry)
        return matrix

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows=None, cols=None) -> "IntMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        matrix = cls.zeros(rows, cols)
        for i, entry in enumerate(entries):
            matrix.data[i, i] = int(entry)
        return matrix

    @classmethod
    def hstack(cls, *parts: "IntMatrix") -> "IntMatrix":
        rows = parts[0].rows
        for part in parts:
            if part.rows != rows:
                raise ValueError(f"cannot stack {part.rows} rows next to {rows}")
        return cls(np.concatenate([p.data for p in parts], axis=1))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def __getitem__(self, key):
        return self.data[key]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.data[:, j])

    def tolist(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.data]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.data.T.copy())

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.data.copy())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(_matmul(self.data, other.data))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.data + other.data)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(self.data - other.data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(-self.data)

    def __mul__(self, scalar: int) -> "IntMatrix":
        return IntMatrix(self.data * int(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and bool((self.data == other.data).all())

    def __hash__(self):
        return hash((self.shape, tuple(int(x) for x in self.data.flat)))

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for {self.cols} columns")
        column = np.array(list(vector), dtype=object).reshape(self.cols, 1)
        return tuple(int(x) for x in _matmul(self.data, column)[:, 0])

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


def _identity(size: int) -> np.ndarray:
    data = np.zeros((size, size), dtype=object)
    for i in range(size):
        data[i, i] = 1
    return data


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    return a.dot(b)


def _smallest(a: np.ndarray, positions) -> Optional[Tuple[int, int]]:
    best = None
    for i, j in positions:
        if a[i, j] and (best is None or abs(a[i, j]) < abs(a[best])):
            best = (i, j)
    return best


def _move_pivot(a, u, v, t, position):
    i, j = position
    if i != t:
        a[[t, i]] = a[[i, t]]
        u[[t, i]] = u[[i, t]]
    if j != t:
        a[:, [t, j]] = a[:, [j, t]]
        v[:, [t, j]] = v[:, [j, t]]


def _reduce_cross(a, u, v, t) -> bool:
    """
    Reduces row and column t against the pivot.
    Returns True when a smaller remainder became the new pivot.
    """
    rows, cols = a.shape
    p = a[t, t]
    for i in range(t + 1, rows):
        q = a[i, t] // p
        if q:
            a[i, t:] -= q * a[t, t:]
            u[i, :] -= q * u[t, :]
    for j in range(t + 1, cols):
        q = a[t, j] // p
        if q:
            a[t:, j] -= q * a[t:, t]
            v[:, j] -= q * v[:, t]
    cross = [(i, t) for i in range(t + 1, rows)] + [(t, j) for j in range(t + 1, cols)]
    position = _smallest(a, cross)
    if position is None:
        return False
    _move_pivot(a, u, v, t, position)
    return True


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Returns unimodular U, V and diagonal D with U * m * V == D.

    The diagonal is nonnegative, nonzero entries come first and each one
    divides the next.
    """
    a = m.data.copy()
    rows, cols = a.shape
    u = _identity(rows)
    v = _identity(cols)
    for t in range(min(rows, cols)):
        sub_rows, sub_cols = np.nonzero(a[t:, t:])
        position = _smallest(a, [(t + i, t + j) for i, j in zip(sub_rows, sub_cols)])
        if position is None:
            break
        _move_pivot(a, u, v, t, position)
        while True:
            if _reduce_cross(a, u, v, t):
                continue
            # the pivot must divide everything still below and to the right
            bad = np.nonzero(a[t + 1 :, t + 1 :] % a[t, t])[0]
            if not len(bad):
                break
            i = t + 1 + int(bad[0])
            a[t, :] += a[i, :]
            u[t, :] += u[i, :]
        if a[t, t] < 0:
            a[t, :] = -a[t, :]
            u[t, :] = -u[t, :]
    if Conf.CHECK_SNF and not bool((_matmul(_matmul(u, m.data), v) == a).all()):
        raise ArithmeticError(f"Smith form check failed for a {rows}x{cols} matrix")
    return IntMatrix(u), IntMatrix(a), IntMatrix(v)


def diagonal_of(d: IntMatrix) -> List[int]:
    return [int(d.data[i, i]) for i in range(min(d.shape))]


def matrix_rank(m: IntMatrix) -> int:
    return sum(1 for x in diagonal_of(smith_normal_form(m)[1]) if x)


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """
    Columns form a basis of the integer kernel of m.
    """
    _, d, v = smith_normal_form(m)
    rank = sum(1 for x in diagonal_of(d) if x)
    return IntMatrix(v.data[:, rank:].copy())


def unimodular_inverse(u: IntMatrix) -> IntMatrix:
    left, d, right = smith_normal_form(u)
    if u.rows != u.cols or any(x != 1 for x in diagonal_of(d)):
        raise ValueError("matrix is not unimodular")
    return right @ left


@dataclass(frozen=True)
class AbelianGroupClass:
    """
    Isomorphism class Z^r (+) Z/d1 (+) ... (+) Z/dk with 1 < d1 | d2 | ... | dk.
    """

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError(f"negative free rank {self.free_rank}")
        previous = 1
        for d in self.torsion:
            if d <= 1 or d % previous:
                raise ValueError(f"torsion {self.torsion} is not an invariant factor chain")
            previous = d

    @classmethod
    def trivial(cls) -> "AbelianGroupClass":
        return cls()

    @classmethod
    def from_moduli(cls, moduli: Iterable[int]) -> "AbelianGroupClass":
        """
        Normalizes an arbitrary direct sum of cyclic groups, Z being Z/0.
        """
        moduli = [abs(int(m)) for m in moduli]
        free_rank = moduli.count(0)
        finite = [m for m in moduli if m > 1]
        if not finite:
            return cls(free_rank)
        d = smith_normal_form(IntMatrix.diagonal(finite))[1]
        return cls(free_rank, tuple(x for x in diagonal_of(d) if x > 1))

    @property
    def is_trivial(self) -> bool:
        return not self.free_rank and not self.torsion

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        order = 1
        for d in self.torsion:
            order *= d
        return order

    def direct_sum(self, *others: "AbelianGroupClass") -> "AbelianGroupClass":
        moduli = [0] * self.free_rank + list(self.torsion)
        for other in others:
            moduli += [0] * other.free_rank + list(other.torsion)
        return AbelianGroupClass.from_moduli(moduli)

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " (+) ".join(parts) or "0"

    __str__ = render

    @classmethod
    def parse(cls, text: str) -> "AbelianGroupClass":
        text = text.strip()
        if text == "0":
            return cls()
        moduli = []
        for part in text.split("(+)"):
            part = part.strip()
            match = re.fullmatch(r"Z(?:\^(\d+)|/(\d+))?", part)
            if not match:
                raise ValueError(f"cannot read group summand {part!r}")
            if match.group(2):
                moduli.append(int(match.group(2)))
            else:
                moduli += [0] * int(match.group(1) or 1)
        return cls.from_moduli(moduli)

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": self.render()}

    @classmethod
    def from_dict(cls, data: dict) -> "AbelianGroupClass":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))


@dataclass(frozen=True)
class FGAbelianGroup:
    """
    Explicit group Z/m_1 (+) ... (+) Z/m_r with a fixed basis; m_i = 0 is Z.
    """

    moduli: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        for m in self.moduli:
            if m < 0:
                raise ValueError(f"negative modulus {m}")

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls((0,) * rank)

    @classmethod
    def cyclic(cls, modulus: int) -> "FGAbelianGroup":
        return cls((modulus,))

    @classmethod
    def from_relations(cls, relations: IntMatrix):
        """
        Diagonalizes Z^r / (column span of relations).

        Returns the group together with the matrices carrying old coordinates
        to new ones (projection) and new coordinates back (section).
        """
        u, d, _ = smith_normal_form(relations)
        diagonal = diagonal_of(d)
        moduli = [diagonal[i] if i < len(diagonal) else 0 for i in range(relations.rows)]
        kept = [i for i, m in enumerate(moduli) if m != 1]
        u_inverse = unimodular_inverse(u)
        projection = IntMatrix(u.data[kept, :].reshape(len(kept), relations.rows))
        section = IntMatrix(u_inverse.data[:, kept].reshape(relations.rows, len(kept)))
        return cls(tuple(moduli[i] for i in kept)), projection, section

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def direct_sum(self, *others: "FGAbelianGroup") -> "FGAbelianGroup":
        moduli = self.moduli
        for other in others:
            moduli += other.moduli
        return FGAbelianGroup(moduli)

    def power(self, count: int) -> "FGAbelianGroup":
        return FGAbelianGroup(self.moduli * count)

    def relation_matrix(self) -> IntMatrix:
        """
        One column m_i * e_i for every nonzero modulus.
        """
        torsion = [i for i, m in enumerate(self.moduli) if m]
        matrix = IntMatrix.zeros(self.rank, len(torsion))
        for j, i in enumerate(torsion):
            matrix.data[i, j] = self.moduli[i]
        return matrix

    def reduce(self, vector: Sequence[int]) -> Tuple[int, ...]:
        if len(vector) != self.rank:
            raise ValueError(f"vector of length {len(vector)} in a group of rank {self.rank}")
        return tuple(int(x) % m if m else int(x) for x, m in zip(vector, self.moduli))

    def is_zero(self, vector: Sequence[int]) -> bool:
        return not any(self.reduce(vector))

    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.rank

    def basis_vector(self, i: int) -> Tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def classify(self) -> AbelianGroupClass:
        return AbelianGroupClass.from_moduli(self.moduli)


def _quotient(kernel: IntMatrix, image: IntMatrix) -> AbelianGroupClass:
    """
    Class of span(kernel) / span(image) where kernel has independent columns
    and span(image) lies inside span(kernel).
    """
    k = kernel.cols
    if not k:
        return AbelianGroupClass.trivial()
    u, d, _ = smith_normal_form(kernel)
    pivots = diagonal_of(d)
    moved = _matmul(u.data, image.data)
    # coordinates of the image in the basis V^-1 of the kernel lattice
    coordinates = np.zeros((k, image.cols), dtype=object)
    for i in range(k):
        for j in range(image.cols):
            q, r = divmod(moved[i, j], pivots[i])
            if r:
                raise ArithmeticError("image is not contained in the kernel")
            coordinates[i, j] = q
    diagonal = diagonal_of(smith_normal_form(IntMatrix(coordinates))[1])
    nonzero = [x for x in diagonal if x]
    return AbelianGroupClass(k - len(nonzero), tuple(x for x in nonzero if x > 1))


def cokernel(matrix: IntMatrix, group: FGAbelianGroup) -> AbelianGroupClass:
    """
    Class of group / (column span of matrix).
    """
    if matrix.rows != group.rank:
        raise ValueError(f"{matrix.rows} rows for a group of rank {group.rank}")
    relations = IntMatrix.hstack(matrix, group.relation_matrix())
    return _quotient(IntMatrix.identity(group.rank), relations)


class ChainComplexFG:
    """
    Bounded chain complex of explicit abelian groups.

    ``boundaries[n]`` maps degree n to degree n - 1. ``boundaries[0]`` has no
    rows so degree 0 is a cycle group in full.
    """

    def __init__(self, groups: List[FGAbelianGroup], boundaries: List[IntMatrix]):
        if not groups or len(groups) != len(boundaries):
            raise ValueError("a complex needs one boundary per degree")
        for n, (group, boundary) in enumerate(zip(groups, boundaries)):
            rows = groups[n - 1].rank if n else 0
            if boundary.shape != (rows, group.rank):
                raise ValueError(
                    f"boundary {n} has shape {boundary.shape}, expected {(rows, group.rank)}"
                )
        self.groups = groups
        self.boundaries = boundaries

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def ranks(self) -> List[int]:
        return [g.rank for g in self.groups]

    def composite(self, n: int) -> IntMatrix:
        return self.boundaries[n] @ self.boundaries[n + 1]

    def first_failure(self) -> Optional[int]:
        """
        Least n whose composite d_n d_(n+1) is not zero modulo degree n - 1.
        """
        for n in range(1, self.top):
            product = self.composite(n)
            target = self.groups[n - 1]
            for j in range(product.cols):
                if not target.is_zero(product.column(j)):
                    return n
        return None


def homology_of_complex(c: ChainComplexFG, n: int) -> AbelianGroupClass:
    """
    Class of ker(d_n) / im(d_(n+1)) at degree n, torsion included.
    """
    if not 0 <= n <= c.top:
        raise ValueError(f"degree {n} outside 0..{c.top}")
    group = c.groups[n]
    pre_homology.send(sender="homzero.abelian", degree=n, ranks=c.ranks())
    if n:
        # cycles are x with d_n x in the relations of degree n - 1
        below = c.groups[n - 1].relation_matrix()
        stacked = IntMatrix.hstack(c.boundaries[n], -below)
        kernel = IntMatrix(integer_kernel(stacked).data[: group.rank, :].copy())
    else:
        kernel = IntMatrix.identity(group.rank)
    image = group.relation_matrix()
    if n < c.top:
        image = IntMatrix.hstack(c.boundaries[n + 1], image)
    result = _quotient(kernel, image)
    logger.debug(_(f"H_{n} of complex with ranks {c.ranks()} is {result}"))
    return result
