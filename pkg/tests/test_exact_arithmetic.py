from fractions import Fraction

import pytest

from utils.exact_linalg import dot, rank
from utils.polyhedral import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    is_feasible,
    linprog_exact,
    orthant_hull_inequalities,
)
from utils.rational import format_rational, parse_rational, primitive_integer_vector


@pytest.mark.parametrize(
    "text, expected",
    [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), (" 5 / 10 ", Fraction(1, 2)), ("+7", Fraction(7))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["1.5", "1/0", "", "a/b", "1/-2"])
def test_parse_rational_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(2) == "2"


def test_primitive_integer_vector():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(1, 3)]) == (3, 2)
    assert primitive_integer_vector([4, 0, -6]) == (2, 0, -3)
    assert primitive_integer_vector([0, 0]) == (0, 0)


def test_rank_and_dot():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 0], [0, 1, 0]]) == 2
    assert rank([]) == 0
    assert dot([Fraction(1, 2), 3], [4, Fraction(1, 3)]) == 3


def test_linprog_exact_optimum():
    # min x + y  s.t.  x + y >= 1, 3x >= 1
    result = linprog_exact([1, 1], A_ub=[[-1, -1], [-3, 0]], b_ub=[-1, -1])
    assert result.status == OPTIMAL
    assert result.objective == 1
    assert result.x[0] >= Fraction(1, 3)


def test_linprog_fractional_solution():
    result = linprog_exact([1], A_eq=[[3]], b_eq=[1])
    assert result.x == (Fraction(1, 3),)
    assert isinstance(result.objective, Fraction)


def test_linprog_infeasible_and_unbounded():
    assert linprog_exact([1], A_ub=[[1]], b_ub=[-1]).status == INFEASIBLE
    assert linprog_exact([-1], A_ub=[[-1]], b_ub=[0]).status == UNBOUNDED


def test_linprog_redundant_equalities():
    result = linprog_exact([1, 2], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert result.status == OPTIMAL
    assert result.objective == 1


def test_is_feasible():
    assert is_feasible(A_eq=[[1, 1]], b_eq=[1])
    assert not is_feasible(A_eq=[[1, 1]], b_eq=[-1])


def test_hull_of_a_point_is_the_shifted_orthant():
    assert orthant_hull_inequalities([(2, 3)], 2) == [((0, 1), 3), ((1, 0), 2)]


def test_hull_keeps_only_facets():
    # conv{(4,0), (2,2), (0,4)} + R_+^2: (2,2) lies on the edge, so one slanted facet
    inequalities = orthant_hull_inequalities([(4, 0), (2, 2), (0, 4)], 2)
    assert inequalities == [((0, 1), 0), ((1, 0), 0), ((1, 1), 4)]


def test_hull_with_fractional_points():
    inequalities = orthant_hull_inequalities([(Fraction(1, 2), 0), (0, Fraction(1, 3))], 2)
    assert ((2, 3), 1) in inequalities
    assert all(isinstance(offset, Fraction) for _, offset in inequalities)


def test_hull_of_nothing():
    with pytest.raises(ValueError):
        orthant_hull_inequalities([], 2)
