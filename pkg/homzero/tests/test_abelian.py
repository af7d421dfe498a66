import random
from itertools import combinations, product
from math import gcd

import pytest

from homzero.abelian import (
    AbelianGroupClass,
    ChainComplexFG,
    FGAbelianGroup,
    IntMatrix,
    cokernel,
    diagonal_of,
    homology_of_complex,
    integer_kernel,
    matrix_rank,
    smith_normal_form,
    unimodular_inverse,
)
from homzero.homology import bar_homology
from homzero.semigroup import cyclic_group
from homzero.signals import pre_homology
from homzero.tests.samples import random_matrix
from homzero.zmodule import trivial_module


def bareiss(rows):
    """
    Fraction free determinant of a square integer matrix.
    """
    a = [list(r) for r in rows]
    n = len(a)
    if not n:
        return 1
    sign, previous = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def invariant_factors(m: IntMatrix):
    """
    Quotients of consecutive determinantal divisors.
    """
    rows = m.tolist()
    r, c = m.shape
    result = []
    previous = 1
    for k in range(1, min(r, c) + 1):
        divisor = 0
        for chosen_rows in combinations(range(r), k):
            for chosen_cols in combinations(range(c), k):
                minor = bareiss([[rows[i][j] for j in chosen_cols] for i in chosen_rows])
                divisor = gcd(divisor, minor)
                if divisor == 1:
                    break
            if divisor == 1:
                break
        if not divisor:
            break
        result.append(divisor // previous)
        previous = divisor
    return result + [0] * (min(r, c) - len(result))


def sample_matrices(count=100):
    rng = random.Random(20)
    matrices = []
    for i in range(count):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        if i % 10 == 3:
            # rank at most two
            m = random_matrix(rng, rows, 2, 4) @ random_matrix(rng, 2, cols, 4)
        elif i % 10 == 7:
            scale = IntMatrix.diagonal([2, 6, 12, 24, 48, 96, 192, 384][:cols])
            m = random_matrix(rng, rows, cols, 3) @ scale
        elif i % 10 == 9:
            m = IntMatrix.zeros(rows, cols)
        else:
            m = random_matrix(rng, rows, cols)
        matrices.append(m)
    return matrices


@pytest.mark.parametrize("m", sample_matrices(), ids=lambda m: "x".join(map(str, m.shape)))
def test_smith_form_matches_determinantal_divisors(m):
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(bareiss(u.tolist())) == 1
    assert abs(bareiss(v.tolist())) == 1
    diagonal = diagonal_of(d)
    # off the diagonal everything vanished
    assert d == IntMatrix.diagonal(diagonal, rows=m.rows, cols=m.cols)
    assert diagonal == invariant_factors(m)
    nonzero = [x for x in diagonal if x]
    assert diagonal[: len(nonzero)] == nonzero
    for x, y in zip(nonzero, nonzero[1:]):
        assert x > 0 and y % x == 0


def test_smith_form_of_known_matrix():
    m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    _, d, _ = smith_normal_form(m)
    assert diagonal_of(d) == [2, 6, 12]
    assert matrix_rank(m) == 3


def test_smith_form_of_empty_matrices():
    for shape in ((0, 3), (3, 0), (0, 0)):
        u, d, v = smith_normal_form(IntMatrix.zeros(*shape))
        assert d.shape == shape
        assert u.shape == (shape[0], shape[0])
        assert v.shape == (shape[1], shape[1])


def test_integer_kernel():
    rng = random.Random(3)
    for _ in range(20):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 6), 5)
        kernel = integer_kernel(m)
        assert (m @ kernel).is_zero()
        assert kernel.cols == m.cols - matrix_rank(m)


def test_unimodular_inverse():
    u = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert u @ unimodular_inverse(u) == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(IntMatrix.from_rows([[2, 0], [0, 1]]))


def test_int_matrix_basics():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert a.transpose().tolist() == [[1, 3], [2, 4]]
    assert (a - a).is_zero()
    assert 2 * a == a + a
    assert a.apply((1, 1)) == (3, 7)
    assert IntMatrix.zeros(2, 0) @ IntMatrix.zeros(0, 3) == IntMatrix.zeros(2, 3)
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        a @ IntMatrix.zeros(3, 1)
    # entries are python ints and never overflow
    big = IntMatrix.from_rows([[2 ** 70]])
    assert (big @ big).tolist() == [[2 ** 140]]


def test_group_class():
    assert AbelianGroupClass.from_moduli([2, 3]) == AbelianGroupClass(0, (6,))
    g = AbelianGroupClass.from_moduli([4, 0, 2, 1])
    assert g == AbelianGroupClass(1, (2, 4))
    assert g.render() == "Z (+) Z/2 (+) Z/4"
    assert str(AbelianGroupClass(3)) == "Z^3"
    assert AbelianGroupClass.trivial().render() == "0"
    assert AbelianGroupClass.trivial().is_trivial
    assert AbelianGroupClass.parse("Z (+) Z/2 (+) Z/4") == g
    assert AbelianGroupClass.parse("0").is_trivial
    assert AbelianGroupClass.from_dict(g.as_dict()) == g
    assert AbelianGroupClass(0, (2, 6)).order == 12
    assert g.order is None
    assert AbelianGroupClass(0, (2,)).direct_sum(AbelianGroupClass(0, (3,))) == AbelianGroupClass(0, (6,))
    with pytest.raises(ValueError):
        AbelianGroupClass(0, (4, 2))
    with pytest.raises(ValueError):
        AbelianGroupClass.parse("Q")


def test_explicit_group():
    g = FGAbelianGroup((0, 4))
    assert g.reduce((5, 9)) == (5, 1)
    assert g.is_zero((0, 8))
    assert not g.is_zero((1, 0))
    assert g.relation_matrix().tolist() == [[0], [4]]
    assert g.power(2).moduli == (0, 4, 0, 4)
    assert g.classify() == AbelianGroupClass(1, (4,))
    with pytest.raises(ValueError):
        FGAbelianGroup((-2,))


def test_group_from_relations():
    relations = IntMatrix.from_rows([[2, 0], [0, 3]])
    group, projection, section = FGAbelianGroup.from_relations(relations)
    assert group.moduli == (6,)
    assert projection @ section == IntMatrix.identity(1)
    free, _, _ = FGAbelianGroup.from_relations(IntMatrix.zeros(2, 0))
    assert free.moduli == (0, 0)


def test_cokernel():
    assert cokernel(IntMatrix.from_rows([[2, 0], [0, 3]]), FGAbelianGroup.free(2)) == AbelianGroupClass(0, (6,))
    assert cokernel(IntMatrix.zeros(2, 0), FGAbelianGroup((0, 2))) == AbelianGroupClass(1, (2,))
    assert cokernel(IntMatrix.from_rows([[2]]), FGAbelianGroup((4,))) == AbelianGroupClass(0, (2,))


def test_homology_of_small_complexes():
    # Z --2--> Z
    c = ChainComplexFG(
        [FGAbelianGroup.free(1), FGAbelianGroup.free(1)],
        [IntMatrix.zeros(0, 1), IntMatrix.from_rows([[2]])],
    )
    assert homology_of_complex(c, 0) == AbelianGroupClass(0, (2,))
    assert homology_of_complex(c, 1).is_trivial
    # Z/4 --2--> Z/4
    c = ChainComplexFG(
        [FGAbelianGroup((4,)), FGAbelianGroup((4,))],
        [IntMatrix.zeros(0, 1), IntMatrix.from_rows([[2]])],
    )
    assert homology_of_complex(c, 0) == AbelianGroupClass(0, (2,))
    assert homology_of_complex(c, 1) == AbelianGroupClass(0, (2,))
    # Z^2 --(1 1)--> Z: cycles Z, no boundaries on top
    c = ChainComplexFG(
        [FGAbelianGroup.free(1), FGAbelianGroup.free(2)],
        [IntMatrix.zeros(0, 1), IntMatrix.from_rows([[1, 1]])],
    )
    assert homology_of_complex(c, 1) == AbelianGroupClass(1)
    assert homology_of_complex(c, 0).is_trivial
    with pytest.raises(ValueError):
        homology_of_complex(c, 2)


def test_complex_shape_and_failures():
    with pytest.raises(ValueError):
        ChainComplexFG(
            [FGAbelianGroup.free(1), FGAbelianGroup.free(2)],
            [IntMatrix.zeros(0, 1), IntMatrix.from_rows([[1, 1, 1]])],
        )
    z = FGAbelianGroup.free(1)
    c = ChainComplexFG(
        [z, z, z],
        [IntMatrix.zeros(0, 1), IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]])],
    )
    assert c.ranks() == [1, 1, 1]
    assert c.first_failure() == 1
    # the same maps are fine modulo 1 below
    c = ChainComplexFG(
        [FGAbelianGroup((1,)), z, z],
        [IntMatrix.zeros(0, 1), IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]])],
    )
    assert c.first_failure() is None


def test_pre_homology_signal():
    seen = []

    def receiver(sender, degree, ranks, **kwargs):
        seen.append((degree, ranks))

    pre_homology.connect(receiver)
    try:
        z = FGAbelianGroup.free(1)
        homology_of_complex(ChainComplexFG([z], [IntMatrix.zeros(0, 1)]), 0)
    finally:
        pre_homology.disconnect(receiver)
    assert seen == [(0, [1])]


def well_defined_map(rng, source: FGAbelianGroup, target: FGAbelianGroup) -> IntMatrix:
    """
    Random map between finite groups that sends relations to relations.
    """
    return IntMatrix.from_rows(
        [[rng.randrange(gcd(t, m)) * (t // gcd(t, m)) for m in source.moduli] for t in target.moduli],
        cols=source.rank,
    )


def all_maps(source: FGAbelianGroup, target: FGAbelianGroup):
    steps = [[t // gcd(t, m) for m in source.moduli] for t in target.moduli]
    choices = [range(0, t, step) for t, row in zip(target.moduli, steps) for step in row]
    for entries in product(*choices):
        yield IntMatrix.from_rows(
            [entries[i * source.rank : (i + 1) * source.rank] for i in range(target.rank)],
            cols=source.rank,
        )


def random_finite_complex(rng) -> ChainComplexFG:
    groups = [FGAbelianGroup(tuple(rng.choice((2, 3, 4, 6)) for _ in range(rng.randint(1, 2)))) for _ in range(3)]
    top = well_defined_map(rng, groups[2], groups[1])
    middle = [
        m
        for m in all_maps(groups[1], groups[0])
        if all(groups[0].is_zero((m @ top).column(j)) for j in range(top.cols))
    ]
    return ChainComplexFG(groups, [IntMatrix.zeros(0, groups[0].rank), rng.choice(middle), top])


def enumerated_homology(c: ChainComplexFG, n: int):
    """
    Cycles, boundaries and the number of k-torsion classes, all by listing
    every element.
    """
    group = c.groups[n]
    elements = list(product(*(range(m) for m in group.moduli)))
    cycles = [x for x in elements if not n or c.groups[n - 1].is_zero(c.boundaries[n].apply(x))]
    if n < c.top:
        above = c.groups[n + 1]
        boundaries = {group.reduce(c.boundaries[n + 1].apply(y)) for y in product(*(range(m) for m in above.moduli))}
    else:
        boundaries = {group.zero()}
    torsion = {
        k: sum(1 for x in cycles if group.reduce([k * v for v in x]) in boundaries) // len(boundaries)
        for k in range(1, 13)
    }
    return len(cycles), len(boundaries), torsion


def test_homology_agrees_with_enumeration():
    rng = random.Random(59)
    for _ in range(25):
        c = random_finite_complex(rng)
        assert c.first_failure() is None
        for n in range(3):
            group = homology_of_complex(c, n)
            cycles, boundaries, torsion = enumerated_homology(c, n)
            assert group.free_rank == 0
            assert group.order == cycles // boundaries
            for k, count in torsion.items():
                expected = 1
                for d in group.torsion:
                    expected *= gcd(k, d)
                assert count == expected


def random_free_complex(rng, ranks) -> ChainComplexFG:
    """
    Free complex with boundaries built top down, each row space orthogonal
    to the image of the boundary above.
    """
    boundaries = [random_matrix(rng, ranks[-2], ranks[-1], 3)]
    for n in range(len(ranks) - 2, 0, -1):
        left = integer_kernel(boundaries[0].transpose())
        if left.cols:
            d = random_matrix(rng, ranks[n - 1], left.cols, 2) @ left.transpose()
        else:
            d = IntMatrix.zeros(ranks[n - 1], ranks[n])
        boundaries.insert(0, d)
    boundaries.insert(0, IntMatrix.zeros(0, ranks[0]))
    return ChainComplexFG([FGAbelianGroup.free(r) for r in ranks], boundaries)


def test_euler_characteristic():
    rng = random.Random(61)
    for _ in range(30):
        ranks = [rng.randint(1, 5) for _ in range(rng.randint(2, 5))]
        c = random_free_complex(rng, ranks)
        assert c.first_failure() is None
        groups = [homology_of_complex(c, n) for n in range(c.top + 1)]
        assert sum((-1) ** n * r for n, r in enumerate(ranks)) == sum(
            (-1) ** n * g.free_rank for n, g in enumerate(groups)
        )


def periodic_resolution(base: FGAbelianGroup, top: int) -> ChainComplexFG:
    """
    Periodic resolution of the group of order two with trivial coefficients.
    Boundaries multiply by 0 and 2 in turn.
    """
    boundaries = [IntMatrix.zeros(0, base.rank)]
    for n in range(1, top + 1):
        boundaries.append(IntMatrix.identity(base.rank) * (0 if n % 2 else 2))
    return ChainComplexFG([base] * (top + 1), boundaries)


@pytest.mark.parametrize("modulus", [0, 2, 3, 4])
def test_order_two_group_against_periodic_resolution(modulus):
    base = FGAbelianGroup((modulus,))
    s = cyclic_group(2)
    periodic = periodic_resolution(base, 4)
    for n in range(4):
        assert bar_homology(s, trivial_module(s, base), n) == homology_of_complex(periodic, n)
