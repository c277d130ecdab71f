from fractions import Fraction

import pytest

from corpus import exact, omega_k, pencil
from folval.algebra import Poly, UPoly
from folval.blowup import CHART1, CHART2, blowup, is_dicritical, pullback_scalar, pushdown_param, total_transform
from folval.errors import PreconditionError
from folval.foliation import OneFormGerm, algebraic_multiplicity, classify, translate
from folval.resolution import reduce

x, y = Poly.var(0), Poly.var(1)
t = UPoly([0, 1])


def test_is_dicritical():
    assert is_dicritical(OneFormGerm(-y, x))
    assert not is_dicritical(OneFormGerm(y, x))
    assert is_dicritical(omega_k(3))
    with pytest.raises(PreconditionError):
        is_dicritical(OneFormGerm(Poly.constant(1), x))


def test_radial_blowup():
    res = blowup(OneFormGerm(-y, x))
    assert total_transform(OneFormGerm(-y, x), CHART1) == (Poly.zero(), x**2)
    assert res.strict[1] == OneFormGerm(Poly.zero(), Poly.constant(1))
    assert res.dicritical and res.m == 2


def test_cusp_blowup_by_hand():
    # 2y dy - 3x^2 dx: substitute (x, xy) and expand by hand
    germ = OneFormGerm(-3 * x**2, 2 * y)
    total = total_transform(germ, CHART1)
    assert total == (2 * x * y**2 - 3 * x**2, 2 * x**2 * y)
    res = blowup(germ)
    assert res.m == 1 and not res.dicritical
    assert res.strict[1] == OneFormGerm(2 * y**2 - 3 * x, 2 * x * y)


def test_saddle_node_blowup():
    res = blowup(OneFormGerm(-y, x**2))
    assert not res.dicritical and res.m == 1


def test_m_is_multiplicity_plus_epsilon_on_samples():
    samples = [omega_k(3), omega_k(4), exact(y**3 - x**4), pencil(y**2, x**3), OneFormGerm(-2 * y, x)]
    for germ in samples:
        res = blowup(germ)
        assert res.m == algebraic_multiplicity(germ) + (1 if res.dicritical else 0)
        for s in res.strict.values():
            assert s.is_coprime()


def test_chart_overlap_classification():
    germ = exact(x * y * (x - y) * (x + 2 * y))
    res = blowup(germ)
    for b in (Fraction(1), Fraction(-1, 2), Fraction(3)):
        via1 = classify(translate(res.strict[1], (0, b)))
        via2 = classify(translate(res.strict[2], (1 / b, 0)))
        assert via1.kind == via2.kind


def test_pullback_scalar():
    assert pullback_scalar(x * y, CHART1) == x**2 * y
    assert pullback_scalar(x * y, CHART1, strict=True) == y
    f = y**2 - x**3
    assert pullback_scalar(f, CHART1) == x**2 * (y**2 - x)
    assert pullback_scalar(f, CHART1, strict=True) == y**2 - x
    assert pullback_scalar(x, CHART1, strict=True) == Poly.constant(1)
    assert pullback_scalar(f, CHART2, strict=True) == 1 - x**3 * y


def test_pullback_is_multiplicative():
    f, g = y**2 - x**3, x + 2 * y**2
    for chart in (CHART1, CHART2):
        assert pullback_scalar(f * g, chart) == pullback_scalar(f, chart) * pullback_scalar(g, chart)


def test_pushdown_param():
    assert pushdown_param((t, UPoly([1])), CHART1) == (t, t)
    assert pushdown_param((t, UPoly()), CHART1) == (t, UPoly())
    assert pushdown_param((t, UPoly()), CHART1, (Fraction(0), Fraction(2))) == (t, t * 2)


def test_cusp_curvetta_blows_down_with_order_two():
    from folval.divisors import attach_curvetta

    tree = reduce(OneFormGerm(-3 * x**2, 2 * y))
    last = tree.components[-1]
    pid = next(p.id for p in tree.final_points() if p.V == (last.id,))
    m, gamma = attach_curvetta(tree, pid, last.id)
    assert min(g.ord() for g in gamma if g) == 2 == m[0]
