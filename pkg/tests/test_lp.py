from fractions import Fraction as Q

import pytest

from superdenom.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, maximize


def test_simple_optimum():
    # max x + y  s.t.  x + y + s = 3, x + 2y + t = 4
    status, value, x = maximize(
        [1, 1, 0, 0],
        [[1, 1, 1, 0], [1, 2, 0, 1]],
        [3, 4])
    assert status == OPTIMAL
    assert value == 3
    assert x[0] + x[1] == 3


def test_fractional_optimum_is_exact():
    # max y  s.t.  2y + s = 1  ->  y = 1/2 exactly
    status, value, x = maximize([0, 1], [[0, 2]], [1])
    assert status == OPTIMAL
    assert value == Q(1, 2)
    assert x[1] == Q(1, 2)


def test_infeasible():
    # x = -1 is impossible with x >= 0
    status, value, x = maximize([1], [[1]], [-1])
    assert status == INFEASIBLE and value is None and x is None


def test_unbounded():
    # max x with only x - y = 0: both can grow without limit
    status, value, x = maximize([1, 0], [[1, -1]], [0])
    assert status == UNBOUNDED


def test_degenerate_ties_terminate():
    # Bland's rule must leave this classic cycling example
    status, value, _ = maximize(
        [Q(3, 4), -150, Q(1, 50), -6, 0, 0, 0],
        [[Q(1, 4), -60, Q(-1, 25), 9, 1, 0, 0],
         [Q(1, 2), -90, Q(-1, 50), 3, 0, 1, 0],
         [0, 0, 1, 0, 0, 0, 1]],
        [0, 0, 1])
    assert status == OPTIMAL
    assert value == Q(1, 20)


def test_negative_rhs_rows_are_flipped():
    status, value, x = maximize([0, 0], [[-1, 0], [0, 1]], [-2, 5])
    assert status == OPTIMAL
    assert x[0] == 2 and x[1] == 5


def test_row_length_mismatch():
    with pytest.raises(ValueError):
        maximize([1, 2], [[1]], [0])
