from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import omega_k, saddle_node
from folval.algebra import Poly
from folval.errors import InvariantViolationError
from folval.foliation import (
    Kind,
    OneFormGerm,
    algebraic_multiplicity,
    branch_direction,
    classify,
    linear_part,
    ratio_in_positive_rationals,
    translate,
    weak_index_along,
)

x, y = Poly.var(0), Poly.var(1)
ONE = Poly.constant(1)


def test_multiplicity():
    assert algebraic_multiplicity(OneFormGerm(-y, x)) == 1
    assert algebraic_multiplicity(omega_k(3)) == 3
    assert algebraic_multiplicity(OneFormGerm(Poly.zero(), ONE)) == 0


def test_classify_examples():
    assert classify(OneFormGerm(y, x)).kind is Kind.NON_DEGENERATE
    assert classify(OneFormGerm(-y, 2 * x)).kind is Kind.NON_REDUCED
    sn = classify(OneFormGerm(-y, x**2))
    assert sn.kind is Kind.SADDLE_NODE
    assert sn.weak_direction == branch_direction("y=0")
    assert sn.strong_direction == branch_direction("x=0")
    assert classify(OneFormGerm(Poly.zero(), ONE)).kind is Kind.REGULAR


def test_resonance_against_eigenvalues():
    # direct eigenvalue computation on the dual field's Jacobian
    cases = [(-y, 2 * x), (y, x), (-y, x + y), (-3 * y + x, x), (y + x, 2 * x - y), (-y, 5 * x)]
    for P, Q in cases:
        lin = linear_part(OneFormGerm(P, Q))
        m = sympy.Matrix([[lin.a, lin.b], [lin.c, lin.d]])
        ev = list(m.eigenvals(multiple=True))
        expected = bool(all(e != 0 for e in ev)) and sympy.simplify(ev[0] / ev[1]).is_rational and (ev[0] / ev[1]) > 0
        if lin.det:
            assert ratio_in_positive_rationals(lin) == bool(expected)


def test_nilpotent_and_zero_linear_parts_are_not_reduced():
    assert classify(OneFormGerm(-y, Poly.zero() + x**2)).kind is Kind.SADDLE_NODE
    assert classify(OneFormGerm(y**2, -x)).kind is Kind.SADDLE_NODE
    assert classify(OneFormGerm(x**2, -y)).kind is Kind.NON_REDUCED  # d(x^3/3 - y^2/2)
    assert classify(OneFormGerm(x**2 + y**3, y)).kind is Kind.NON_REDUCED  # nilpotent
    assert classify(OneFormGerm(y**2 - x**3, x * y)).kind is Kind.NON_REDUCED


@pytest.mark.parametrize("k", range(1, 9))
def test_weak_index_normal_form(k):
    assert weak_index_along(saddle_node(k), "y=0") == k + 1
    assert weak_index_along(saddle_node(k, 1), "y=0") == k + 1
    assert weak_index_along(saddle_node(k, 1).swapped(), "x=0") == k + 1


def test_weak_index_instance_and_errors():
    germ = OneFormGerm(-y * (1 + x**2), x**3)
    assert weak_index_along(germ, "y=0") == 3
    with pytest.raises(InvariantViolationError):
        weak_index_along(OneFormGerm(ONE, x), "y=0")


def test_translate():
    assert translate(OneFormGerm(-y, x), (1, 0)) == OneFormGerm(-y, x + 1)
    g = omega_k(3)
    assert translate(g, (0, 0)) is g
    assert translate(OneFormGerm(y - 1, x), (0, 1)) == OneFormGerm(y, x)


def test_saddle_node_has_exactly_one_zero_eigenvalue():
    for k in range(1, 5):
        lin = linear_part(saddle_node(k, 3))
        assert lin.det == 0 and lin.trace != 0


coeffs = st.integers(-4, 4).map(Fraction)


@settings(max_examples=80, deadline=None)
@given(st.lists(coeffs, min_size=6, max_size=6), st.sampled_from([Fraction(-2), Fraction(1, 3), Fraction(5)]))
def test_classify_invariant_under_unit_scaling(c, unit):
    P = c[0] * x + c[1] * y + c[2] * x**2
    Q = c[3] * x + c[4] * y + c[5] * y**2
    if P.is_zero and Q.is_zero:
        return
    germ = OneFormGerm(P, Q)
    assert classify(germ).kind == classify(germ.scaled(unit)).kind


@settings(max_examples=40, deadline=None)
@given(st.lists(coeffs, min_size=4, max_size=4))
def test_multiplicity_two_is_never_reduced(c):
    P = c[0] * x**2 + c[1] * y**2 + x**3
    Q = c[2] * x * y + c[3] * y**2
    assert classify(OneFormGerm(P, Q)).kind is Kind.NON_REDUCED
