"""
Tests for exact rational vectors, quadratic spaces and integer lattices
"""

import random
from fractions import Fraction

import pytest
import sympy

from cosetanomaly.errors import DimensionMismatchError, EmptyInputError
from cosetanomaly.quadlattice import (
    IntegerLattice,
    LatticeVector,
    QuadSpace,
    coset_meets_subspace,
    format_fraction,
    in_rational_span,
    inner,
    invariant_factors,
    lcm_fraction_identity,
    lcm_of_list,
    rational_inverse,
    rational_rank,
    smith_normal_form,
    solve_integer_combination,
    to_fraction,
)


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def test_to_fraction_accepts_common_rationals():
    """Test that ints, strings and sympy rationals become exact Fractions"""
    assert to_fraction(3) == Fraction(3)
    assert to_fraction("-5/2") == Fraction(-5, 2)
    assert to_fraction(sympy.Rational(4, 6)) == Fraction(2, 3)
    with pytest.raises(TypeError):
        to_fraction(True)
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_format_fraction():
    assert format_fraction(Fraction(4, 2)) == "2"
    assert format_fraction(Fraction(-3, 4)) == "-3/4"


def test_vector_arithmetic():
    """Test exact vector arithmetic and integrality"""
    u = LatticeVector.of(1, "1/2", 0)
    v = LatticeVector.of(0, "1/2", 2)
    assert (u + v).coords == (Fraction(1), Fraction(1), Fraction(2))
    assert (u + v).is_integral()
    assert not u.is_integral()
    assert (u * 2).as_ints() == [2, 1, 0]
    assert (u - u).is_zero()
    assert (-v).coords[2] == -2
    assert LatticeVector.unit(3, 1).coords == (0, 1, 0)
    with pytest.raises(DimensionMismatchError):
        _ = u + LatticeVector.zero(2)


def test_quad_space_validation():
    """Test that degenerate, asymmetric and misshapen Gram matrices are rejected"""
    with pytest.raises(ValueError):
        QuadSpace(2, ((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        QuadSpace(2, ((1, 0), (1, 1)))
    with pytest.raises(DimensionMismatchError):
        QuadSpace(2, ((1, 0, 0), (0, 1, 0)))


def test_inner_product():
    space = QuadSpace.euclidean(3, weights=[1, 1, "1/2"])
    u = space.vector(1, 2, 2)
    assert inner(space, u, u) == Fraction(7)
    with pytest.raises(DimensionMismatchError):
        inner(space, u, LatticeVector.of(1, 0))


def test_integer_lattice_membership():
    """Test membership and coefficients in a sublattice of Z^2"""
    lattice = IntegerLattice((LatticeVector.of(2, 0), LatticeVector.of(0, 3)))
    assert lattice.coefficients_of(LatticeVector.of(4, 3)) == [2, 1]
    assert lattice.contains(LatticeVector.of(-2, 6))
    assert not lattice.contains(LatticeVector.of(1, 0))
    assert not lattice.contains(LatticeVector.of("1/2", 0))
    with pytest.raises(ValueError):
        IntegerLattice((LatticeVector.of(1, 1), LatticeVector.of(2, 2)))
    with pytest.raises(EmptyInputError):
        IntegerLattice(())


def test_smith_normal_form_known_example():
    """Test the invariant factors of a standard 3x3 example"""
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_smith_normal_form_transforms():
    """Test U * A * V = D with a divisibility chain on random integer matrices"""
    rng = random.Random(20240607)
    for _ in range(25):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        u, d, v = smith_normal_form(a)
        assert _matmul(_matmul(u, a), v) == d
        assert abs(sympy.Matrix(u).det()) == 1
        assert abs(sympy.Matrix(v).det()) == 1
        diagonal = [d[i][i] for i in range(min(rows, cols))]
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0
        assert all(x >= 0 for x in diagonal)
        for x, y in zip(diagonal, diagonal[1:]):
            if x == 0:
                assert y == 0
            else:
                assert y % x == 0


def test_solve_integer_combination():
    assert solve_integer_combination([[2, 0], [0, 3]], [4, 3]) == [2, 1]
    assert solve_integer_combination([[2, 0], [0, 3]], [1, 0]) is None
    assert solve_integer_combination([["1/2", 0], [0, 1]], [1, 5]) == [2, 5]
    assert solve_integer_combination([], [0, 0]) == []
    assert solve_integer_combination([], [1, 0]) is None


def test_solve_integer_combination_random():
    """Test that integer combinations of random rows are always recovered"""
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
        if sympy.Matrix(rows).det() == 0:
            continue
        y = [rng.randint(-5, 5) for _ in range(3)]
        target = [sum(y[i] * rows[i][j] for i in range(3)) for j in range(3)]
        assert solve_integer_combination(rows, target) == y


def test_rational_helpers():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert in_rational_span([3, 6], [[1, 2]])
    assert not in_rational_span([1, 0], [[1, 2]])
    inverse = rational_inverse([[2, -1], [-1, 2]])
    assert inverse == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]


def test_coset_meets_subspace():
    """Test half-integer cosets of Z^2 against coordinate and diagonal lines"""
    z2 = IntegerLattice((LatticeVector.of(1, 0), LatticeVector.of(0, 1)))
    x_axis = [LatticeVector.of(1, 0)]
    diagonal = [LatticeVector.of(1, 1)]

    meets, witness = coset_meets_subspace(z2, LatticeVector.of("1/2", 0), x_axis)
    assert meets
    assert z2.contains(witness)

    meets, witness = coset_meets_subspace(z2, LatticeVector.of(0, "1/2"), x_axis)
    assert not meets
    assert witness is None

    meets, witness = coset_meets_subspace(z2, LatticeVector.of("1/2", "1/2"), diagonal)
    point = LatticeVector.of("1/2", "1/2") + witness
    assert meets
    assert point.coords[0] == point.coords[1]

    assert not coset_meets_subspace(z2, LatticeVector.of("1/2", 0), diagonal)[0]


def test_coset_meets_subspace_on_root_data():
    """Test the A2 theta coset against one coroot and the D5 vector class against a D4 block"""
    from cosetanomaly.liealg import build_algebra, parse_algebra
    from cosetanomaly.subalg import embed_regular, enumerate_regular

    a2 = build_algebra(parse_algebra("A2"))
    theta = a2.fundamental_coweights[1]
    assert not coset_meets_subspace(a2.coroot_lattice, theta, [a2.simple_coroots[0]])[0]

    d5 = build_algebra(parse_algebra("D5"))
    d4 = embed_regular(d5, next(s for s in enumerate_regular(d5) if s.label == "D4"))
    spinor = d5.fundamental_coweights[4]
    assert not coset_meets_subspace(d5.coroot_lattice, spinor, d4.cartan_basis)[0]
    for multiple in (2, 4):
        offset = spinor * multiple
        meets, witness = coset_meets_subspace(d5.coroot_lattice, offset, d4.cartan_basis)
        assert meets
        assert d5.coroot_lattice.contains(witness)
        assert in_rational_span(offset + witness, d4.cartan_basis)


def _on_line(point, direction):
    n = len(direction)
    return all(point[i] * direction[j] == point[j] * direction[i] for i in range(n) for j in range(i + 1, n))


def test_coset_meets_subspace_against_brute_force():
    """Test 500 random lines against an exhaustive search over small lattice coefficients"""
    from itertools import product

    rng = random.Random(90210)
    for _ in range(500):
        n = rng.choice([2, 3])
        scales = [rng.choice([1, 2]) for _ in range(n)]
        lattice = IntegerLattice(tuple(LatticeVector.unit(n, i) * scales[i] for i in range(n)))
        direction = [0] * n
        while not any(direction):
            direction = [rng.randint(-2, 2) for _ in range(n)]
        offset = [Fraction(rng.randint(0, 4 * scales[i] - 1), 4) for i in range(n)]

        # 2 * direction is in the lattice, so a solution t * direction - offset exists with
        # t in [-1, 1) whenever one exists at all; its coefficients lie in [-4, 4]
        found = any(
            _on_line([offset[i] + c[i] * scales[i] for i in range(n)], direction)
            for c in product(range(-4, 5), repeat=n)
        )
        meets, witness = coset_meets_subspace(lattice, LatticeVector(tuple(offset)), [LatticeVector(tuple(direction))])
        assert meets == found, (scales, direction, offset)
        if meets:
            assert lattice.contains(witness)
            assert _on_line([offset[i] + witness.coords[i] for i in range(n)], direction)


def test_lcm_helpers():
    assert lcm_of_list([4, 6]) == 12
    with pytest.raises(EmptyInputError):
        lcm_of_list([])
    with pytest.raises(ValueError):
        lcm_of_list([3, 0])
    assert lcm_fraction_identity(6, [3, 3]) == 2
    assert lcm_fraction_identity(5, [3, 2]) == 5


def test_lcm_fraction_identity_exhaustive():
    """Test a / gcd(a, b_1..b_s) against the lcm of a / gcd(a, b_i) for a <= 60, s <= 3"""
    from itertools import combinations_with_replacement
    from math import gcd

    for a in range(1, 61):
        # gcd(a, b) only depends on b through the divisors of a
        divisors = [d for d in range(1, a + 1) if a % d == 0]
        for s in (1, 2, 3):
            for bs in combinations_with_replacement(divisors, s):
                assert lcm_fraction_identity(a, list(bs)) == lcm_of_list([a // gcd(a, b) for b in bs])
