from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from folval.algebra import (
    Poly,
    UPoly,
    eval_on_param,
    gcd,
    homogeneous_part,
    order_at_origin,
    rational_roots,
    resultant,
    split_rational_part,
    squarefree_decomposition,
    substitute,
)
from folval.errors import UndefinedOrderError

x, y = Poly.var(0), Poly.var(1)
t = UPoly([0, 1])

sx, sy = sympy.symbols("x y")


def to_sympy(p: Poly):
    return sum(sympy.Rational(c.numerator, c.denominator) * sx**i * sy**j for (i, j), c in p.items())


def from_sympy(expr) -> Poly:
    poly = sympy.Poly(sympy.expand(expr), sx, sy)
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


small_coeff = st.integers(-3, 3).map(Fraction)
monomial = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monomial, small_coeff, max_size=4).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def test_order_at_origin():
    assert order_at_origin(2 * y) == 1
    assert order_at_origin(y * (2 * x**4 + 8 * x**2 * y - y**2)) == 3
    assert order_at_origin(x**5 + y**7) == 5
    with pytest.raises(UndefinedOrderError):
        order_at_origin(Poly.zero())


def test_homogeneous_part():
    p = x**2 + x * y + y**3
    assert homogeneous_part(p, 2) == x**2 + x * y
    assert homogeneous_part(p, 1).is_zero
    assert homogeneous_part(-y, 1) == -y


def test_gcd_examples():
    assert gcd(x**2 * y, x * y**2) == x * y
    assert gcd(x**3 - y**2, x) == Poly.constant(1)
    assert gcd(x * (x + y), y * (x + y)) == x + y


def test_gcd_brute_force_factor_trial():
    # trial division by a small factor pool recovers the planted common factor
    pool = [x, y, x + y, x - 2 * y, y - x**2, x**2 + y**2 + 1]
    common = (x + y) * (y - x**2)
    p = common * x * (x - 2 * y)
    q = common * y**2
    expected = Poly.constant(1)
    for f in pool:
        pp, qq = p, q
        while True:
            try:
                pp2, qq2 = pp.exact_div(f), qq.exact_div(f)
            except ArithmeticError:
                break
            expected = expected * f
            pp, qq = pp2, qq2
    assert gcd(p, q) == expected.normalized()


def test_substitute_examples():
    assert substitute(x * y, x, x * y) == x**2 * y
    assert substitute(y**2 - x**3, x, x * y) == x**2 * (y**2 - x)
    assert substitute(x, x + 1, y) == x + 1


def test_eval_on_param_examples():
    assert eval_on_param(x, (t**2, t**3)) == t**2
    assert eval_on_param(y**2 - x**3, (t**2, t**3)).is_zero
    assert eval_on_param(x**2, (t, UPoly())) == t**2


def test_format_round_trip_text():
    p = x**2 * y - Fraction(3, 2) * y**3
    assert p.format() == "x^2*y - 3/2*y^3"


def test_resultant_matches_sympy():
    p = y**2 - x**3
    q = 2 * y * x - x**2 + 1
    ours = resultant(p, q, 1)
    theirs = sympy.Poly(sympy.resultant(to_sympy(p), to_sympy(q), sy), sx)
    assert [Fraction(int(c.p), int(c.q)) for c in reversed(theirs.all_coeffs())] == list(ours.coeffs)


def test_rational_roots_and_split():
    p = UPoly([-6, 11, -6, 1]) * UPoly([2, -3]) ** 2 * UPoly([-2, 0, 1]) * t**2
    roots = rational_roots(p)
    assert roots == [(0, 2), (Fraction(2, 3), 2), (1, 1), (2, 1), (3, 1)]
    _, rest = split_rational_part(p)
    assert rest == UPoly([-2, 0, 1])
    assert rational_roots(UPoly([1, 0, 1])) == []


def test_squarefree_decomposition():
    p = UPoly([-1, 1]) ** 3 * UPoly([1, 0, 1]) * UPoly([5, 1])
    parts = dict((f, e) for f, e in squarefree_decomposition(p))
    assert parts[UPoly([-1, 1])] == 3
    assert parts[UPoly([1, 0, 1]) * UPoly([5, 1])] == 1


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_order_is_additive(p, q):
    assert order_at_origin(p * q) == order_at_origin(p) + order_at_origin(q)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys, polys)
def test_substitute_is_ring_homomorphism(p, q, a, b):
    assert substitute(p + q, a, b) == substitute(p, a, b) + substitute(q, a, b)
    assert substitute(p * q, a, b) == substitute(p, a, b) * substitute(q, a, b)


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_properties(a, b, c):
    p, q = a * c, b * c
    g = gcd(p, q)
    pg, qg = p.exact_div(g), q.exact_div(g)
    assert gcd(pg, qg).is_constant()
    expected = from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)))
    assert g == expected.normalized()


@settings(max_examples=60, deadline=None)
@given(polys)
def test_format_reparses(p):
    from folval.parsing import parse_expression

    assert parse_expression(p.format()) == p


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_rational_roots_planted(nums, dens):
    roots = {Fraction(n, d) for n, d in zip(nums, dens)}
    p = UPoly([1])
    for r in roots:
        p = p * UPoly([-r, 1])
    p = p * UPoly([3, 0, 1])
    assert {r for r, _ in rational_roots(p)} == roots
