from fractions import Fraction

import pytest

from lagrangelab.errors import CapExceeded
from lagrangelab.fme import feasible_point, find_positive_functional


def check(constraints, nvars, point):
    for coeffs, rhs in constraints:
        assert sum(Fraction(c) * x for c, x in zip(coeffs, point)) >= Fraction(rhs)


def test_single_variable_interval():
    cons = [((1,), 1), ((-1,), -2)]  # 1 <= x <= 2
    pt = feasible_point(cons, 1)
    assert pt == (Fraction(3, 2),)  # deterministic midpoint


def test_single_variable_one_sided():
    assert feasible_point([((1,), 0)], 1) == (Fraction(0),)
    assert feasible_point([((-1,), -5)], 1) == (Fraction(5),)


def test_infeasible_interval():
    assert feasible_point([((1,), 2), ((-1,), -1)], 1) is None


def test_two_vars_triangle():
    cons = [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)]
    pt = feasible_point(cons, 2)
    assert pt is not None
    check(cons, 2, pt)


def test_two_vars_infeasible():
    cons = [((1, 1), 3), ((-1, 0), 0), ((0, -1), 0)]  # x+y>=3, x<=0, y<=0
    assert feasible_point(cons, 2) is None


def test_unconstrained_variable_defaults_to_zero():
    pt = feasible_point([((1, 0), 2)], 2)
    assert pt == (Fraction(2), Fraction(0))


def test_zero_vars_constant_rows():
    assert feasible_point([((), 0), ((), -3)], 0) == ()
    assert feasible_point([((), 1)], 0) is None


def test_rational_data():
    cons = [((Fraction(1, 2),), Fraction(1, 3))]
    pt = feasible_point(cons, 1)
    assert pt == (Fraction(2, 3),)


def test_row_cap():
    # 12 lower and 12 upper bounds in 3 vars force a quadratic blowup past
    # a tiny cap
    cons = []
    for i in range(1, 13):
        cons.append(((1, i, i * i), i))
        cons.append(((-1, i, -i * i), -i))
    with pytest.raises(CapExceeded):
        feasible_point(cons, 3, cap=5)


def test_positive_functional_pentagon_columns():
    cols = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 1, 1), (1, 0, -1)]
    w = find_positive_functional(cols, 3)
    assert w is not None
    for col in cols:
        assert sum(wi * c for wi, c in zip(w, col)) >= 1


def test_positive_functional_infeasible_on_opposite_columns():
    assert find_positive_functional([(1, 0), (-1, 0)], 2) is None


def test_positive_functional_collapses_duplicates():
    cols = [(0, 0, 1)] * 500 + [(0, 1, 0)] * 500 + [(1, 0, 0)] * 500
    w = find_positive_functional(cols, 3, cap=10)  # cap would trip without dedupe
    assert w == (Fraction(1), Fraction(1), Fraction(1))
