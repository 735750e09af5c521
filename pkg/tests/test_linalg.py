from fractions import Fraction

import pytest

from src.halfalg import generic_field
from src.linalg import (
    integer_determinant,
    integer_row_basis,
    inverse,
    particular_solution,
    rank,
    rref,
    solve_left,
)
from src.scalars import CycNumber


def F(rows):
    return [[Fraction(x) for x in row] for row in rows]


def test_rref_pivots():
    reduced, pivots = rref(F([[1, 2, 3], [2, 4, 6], [0, 1, 1]]))
    assert pivots == [0, 1]
    assert reduced == F([[1, 0, 1], [0, 1, 1]])


def test_rank_of_empty_matrix():
    assert rank([], 3) == 0


def test_inverse():
    m = F([[2, 1], [1, 1]])
    assert inverse(m, Fraction(1)) == F([[1, -1], [-1, 2]])


def test_inverse_rejects_singular():
    with pytest.raises(ValueError):
        inverse(F([[1, 2], [2, 4]]), Fraction(1))


def test_solve_left():
    basis = F([[1, 0, 1], [0, 1, 1]])
    assert solve_left(basis, F([[2, 3, 5]])[0], Fraction(1)) == [2, 3]
    assert solve_left(basis, F([[0, 0, 1]])[0], Fraction(1)) is None


def test_integer_row_basis():
    basis = integer_row_basis([[6, 0], [0, 6], [3, 3], [0, 0]])
    assert len(basis) == 2
    assert abs(integer_determinant(basis)) == 18


@pytest.mark.parametrize("rows, expected", [
    ([[2, -1], [-2, 2]], 2),
    ([[0, 1], [1, 0]], -1),
    ([[1, 2, 3], [4, 5, 6], [7, 8, 10]], -3),
    ([], 1),
])
def test_integer_determinant(rows, expected):
    assert integer_determinant(rows) == expected


def test_particular_solution():
    assert particular_solution([[2, 0], [0, 2]], [1, 3], 1) == [Fraction(1, 2), Fraction(3, 2)]
    assert particular_solution([[1, 1], [1, 1]], [1, 2], 1) is None
    assert particular_solution([[1, 1]], [4], 1) == [4, 0]


def test_inverse_over_cyclotomic_field():
    one, z = CycNumber.one(12), CycNumber.root_of_unity(12, 1)
    m = [[z, one], [one, z]]
    inv = inverse(m, one)
    assert all(isinstance(x, CycNumber) for row in inv for x in row)
    for i in range(2):
        for j in range(2):
            assert sum((m[i][k] * inv[k][j] for k in range(2)), CycNumber.zero(12)) == (1 if i == j else 0)


def test_inverse_over_rational_functions():
    field_, q = generic_field()
    inv = inverse([[q, field_.one], [field_.one, q]], field_.one)
    assert inv[0][0] == q / (q ** 2 - 1)
    assert inv[0][1] == -1 / (q ** 2 - 1)
    assert rank([[q, 1], [q ** 2, q]], 2) == 1


def test_rref_keeps_the_entry_type():
    z = CycNumber.root_of_unity(8, 1)
    reduced, pivots = rref([[z, z * z], [CycNumber.one(8), z]], 2)
    assert pivots == [0]
    assert reduced == [[CycNumber.one(8), z]]
