from fractions import Fraction

import pytest
import sympy

from conftest import random_connected_matrix
from plumbing_calculus.exceptions import DegenerateIntersectionForm
from plumbing_calculus.models import SolutionKind
from plumbing_calculus.tools.feasibility import Inequality, find_point
from plumbing_calculus.tools.graph_core import intersection_matrix
from plumbing_calculus.tools.linalg import (
    determinant,
    inertia,
    inverse,
    is_negative_definite,
    leading_minors,
    matvec,
    rank,
    smith_normal_form,
    solve,
)


def test_determinant_and_inertia_of_e8(e8):
    Q = intersection_matrix(e8)
    assert determinant(Q) == 1
    assert inertia(Q).as_tuple() == (0, 0, 8)
    assert is_negative_definite(Q)
    assert smith_normal_form(Q) == [1] * 8


def test_hyperbolic_inertia():
    assert inertia([[0, 1], [1, 0]]).as_tuple() == (1, 0, 1)
    assert inertia([[0, 0], [0, 0]]).as_tuple() == (0, 2, 0)
    assert is_negative_definite([])


def test_smith_normal_form_keeps_zeros_last():
    assert smith_normal_form([[-2, 0], [0, -2]]) == [2, 2]
    assert smith_normal_form([[1, 1], [1, 1]]) == [1, 0]
    assert smith_normal_form([[2, 4], [4, 2]]) == [2, 6]


def test_solve_unique():
    result = solve([[2, 1], [1, 1]], [3, 2])
    assert result.kind == SolutionKind.UNIQUE
    assert result.particular == (Fraction(1), Fraction(1))


def test_solve_affine_and_empty():
    affine = solve([[1, 1], [1, 1]], [1, 1])
    assert affine.kind == SolutionKind.AFFINE
    assert len(affine.kernel) == 1
    assert matvec([[1, 1], [1, 1]], affine.particular) == [1, 1]
    assert matvec([[1, 1], [1, 1]], affine.kernel[0]) == [0, 0]
    assert solve([[1, 1], [1, 1]], [1, 2]).kind == SolutionKind.EMPTY


def test_inverse(e8):
    Q = intersection_matrix(e8).rows()
    product = [matvec(Q, column) for column in zip(*inverse(Q))]
    assert product == [[int(i == j) for j in range(8)] for i in range(8)]
    with pytest.raises(DegenerateIntersectionForm):
        inverse([[1, 1], [1, 1]])


def test_leading_minors_and_rank():
    assert leading_minors([[-2, 1], [1, -2]]) == [-2, 3]
    assert rank([[1, 1], [1, 1]]) == 1


def test_random_matrices_agree_with_sympy(rng):
    for _ in range(200):
        k = rng.randint(1, 6)
        m = random_connected_matrix(rng, k)
        sym = sympy.Matrix(m)
        assert determinant(m) == sym.det()
        assert rank(m) == sym.rank()
        signs = inertia(m)
        assert signs.n_plus + signs.n_zero + signs.n_minus == k
        assert signs.n_zero == k - sym.rank()
        if determinant(m) != 0:
            assert (determinant(m) > 0) == (signs.n_minus % 2 == 0)


def test_find_point_strict_and_closed():
    x_pos = Inequality((Fraction(1),), Fraction(0), True)
    x_lt_1 = Inequality((Fraction(-1),), Fraction(1), True)
    assert find_point([x_pos, x_lt_1], 1) == (Fraction(1, 2),)

    x_neg = Inequality((Fraction(-1),), Fraction(0), True)
    assert find_point([x_pos, x_neg], 1) is None

    x_ge_0 = Inequality((Fraction(1),), Fraction(0), False)
    x_le_0 = Inequality((Fraction(-1),), Fraction(0), False)
    assert find_point([x_ge_0, x_le_0], 1) == (Fraction(0),)


def test_find_point_two_variables():
    # t1 > 0, t2 > 0, t1 + t2 < 1
    constraints = [
        Inequality((Fraction(1), Fraction(0)), Fraction(0), True),
        Inequality((Fraction(0), Fraction(1)), Fraction(0), True),
        Inequality((Fraction(-1), Fraction(-1)), Fraction(1), True),
    ]
    point = find_point(constraints, 2)
    assert point is not None
    assert all(c.holds(point) for c in constraints)


def test_solve_and_inverse_agree_with_sympy(rng):
    for _ in range(200):
        k = rng.randint(1, 6)
        m = random_connected_matrix(rng, k)
        a = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(k)]
        result = solve(m, a)
        if result.kind == SolutionKind.EMPTY:
            assert sympy.Matrix(m).rank() < sympy.Matrix(m).row_join(sympy.Matrix(a)).rank()
            continue
        assert matvec(m, result.particular) == a
        assert len(result.kernel) == k - rank(m)
        for vector in result.kernel:
            assert matvec(m, vector) == [0] * k
        if determinant(m) != 0:
            expected = sympy.Matrix(m).inv()
            assert inverse(m) == [[Fraction(int(x.p), int(x.q)) for x in expected.row(i)]
                                  for i in range(k)]


def _eigenvalue_signs(m):
    """Sign pattern of the eigenvalues from Descartes' rule on the characteristic polynomial."""
    coeffs = sympy.Matrix(m).charpoly().all_coeffs()
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1
    signs = [c > 0 for c in coeffs if c != 0]
    plus = sum(1 for s, t in zip(signs, signs[1:]) if s != t)
    return plus, zero, len(m) - plus - zero


def test_inertia_matches_eigenvalue_signs(rng):
    for _ in range(200):
        k = rng.randint(1, 6)
        m = random_connected_matrix(rng, k)
        assert inertia(m).as_tuple() == _eigenvalue_signs(m)
        assert is_negative_definite(m) == sympy.Matrix(m).is_negative_definite
        flipped = [[-x for x in row] for row in m]
        assert inertia(flipped).as_tuple() == inertia(m).as_tuple()[::-1]


@pytest.mark.parametrize("m, expected", [
    ([[2, 1], [1, 1]], (2, 0, 0)),
    ([[1, 1], [1, 1]], (1, 1, 0)),
    ([[-2, 1, 0], [1, -2, 1], [0, 1, -2]], (0, 0, 3)),
    ([[0, 1, 0], [1, 0, 1], [0, 1, 0]], (1, 1, 1)),
    ([[Fraction(1, 2), 0], [0, Fraction(-3, 4)]], (1, 0, 1)),
])
def test_inertia_examples(m, expected):
    assert inertia(m).as_tuple() == expected


def test_find_point_maximizes_the_strict_margin():
    # t1 > 0, t2 > 0, t1 + t2 < 3: the margin 1 is reached at (1, 1)
    constraints = [
        Inequality((Fraction(1), Fraction(0)), Fraction(0), True),
        Inequality((Fraction(0), Fraction(1)), Fraction(0), True),
        Inequality((Fraction(-1), Fraction(-1)), Fraction(3), True),
    ]
    assert find_point(constraints, 2) == (Fraction(1), Fraction(1))


def test_find_point_edge_cases():
    x_ge_1 = Inequality((Fraction(1),), Fraction(-1), False)
    x_le_0 = Inequality((Fraction(-1),), Fraction(0), False)
    assert find_point([x_ge_1, x_le_0], 1) is None
    assert find_point([x_ge_1], 1) is not None
    positive_constant = Inequality((Fraction(0),), Fraction(1), True)
    zero_constant = Inequality((Fraction(0),), Fraction(0), True)
    assert find_point([positive_constant], 1) == (Fraction(0),)
    assert find_point([zero_constant, x_ge_1], 1) is None
    assert find_point([], 0) == ()


def test_find_point_agrees_with_a_grid_search(rng):
    grid = [Fraction(i, 4) for i in range(-12, 13)]
    for _ in range(100):
        constraints = [
            Inequality((Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))),
                       Fraction(rng.randint(-4, 4)), rng.random() < 0.5)
            for _ in range(rng.randint(1, 4))
        ]
        point = find_point(constraints, 2)
        if point is not None:
            assert all(c.holds(point) for c in constraints)
        if any(all(c.holds((x, y)) for c in constraints) for x in grid for y in grid):
            assert point is not None
