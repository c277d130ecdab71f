"""One blow-up of the plane at the origin, in the two standard affine charts.

Chart 1 is ``(x, y) -> (x, x*y)`` with divisor ``{x=0}``; chart 2 is
``(x, y) -> (x*y, y)`` with divisor ``{y=0}``.  Chart 2's origin is the only
point of the divisor missing from chart 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, UPoly
from .errors import PreconditionError
from .foliation import OneFormGerm, algebraic_multiplicity

_X = Poly.var(0)
_Y = Poly.var(1)


@dataclass(frozen=True)
class Chart:
    index: int

    def __post_init__(self) -> None:
        if self.index not in (1, 2):
            raise ValueError("chart index must be 1 or 2")

    @property
    def divisor_var(self) -> int:
        """Index of the coordinate whose vanishing is the exceptional divisor."""
        return 0 if self.index == 1 else 1

    @property
    def divisor_branch(self) -> str:
        return "x=0" if self.index == 1 else "y=0"

    def substitution(self, center: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))) -> tuple[Poly, Poly]:
        """Parent coordinates as polynomials in the chart coordinates.

        ``center`` re-centers the chart at a point of the divisor first.
        """
        x = _X + center[0]
        y = _Y + center[1]
        if self.index == 1:
            return x, x * y
        return x * y, y

    def map_point(self, point: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
        u, w = point
        return (u, u * w) if self.index == 1 else (u * w, w)


CHART1 = Chart(1)
CHART2 = Chart(2)


@dataclass(frozen=True)
class BlowupResult:
    multiplicity: int
    dicritical: bool
    m: int
    strict: dict[int, OneFormGerm] = field(default_factory=dict)
    total: dict[int, tuple[Poly, Poly]] = field(default_factory=dict)


def is_dicritical(germ: OneFormGerm) -> bool:
    """Whether blowing up the origin yields a non-invariant divisor.

    True iff x*P_nu + y*Q_nu vanishes identically, nu being the multiplicity.
    """
    nu = algebraic_multiplicity(germ)
    if nu == 0:
        raise PreconditionError("is_dicritical needs a singular germ")
    cone = _X * germ.P.homogeneous_part(nu) + _Y * germ.Q.homogeneous_part(nu)
    return cone.is_zero


def total_transform(germ: OneFormGerm, chart: Chart) -> tuple[Poly, Poly]:
    """Coefficients (of dx, dy) of the pulled-back form, nothing divided out."""
    sub = list(chart.substitution())
    P = germ.P.substitute(sub)
    Q = germ.Q.substitute(sub)
    if chart.index == 1:
        return P + _Y * Q, _X * Q
    return _Y * P, _X * P + Q


def _divisor_order(a: Poly, b: Poly, var: int) -> int:
    return min(p.order_in(var) for p in (a, b) if p)


def blowup(germ: OneFormGerm) -> BlowupResult:
    """Blow up the origin and return strict transforms in both charts.

    Regular germs are accepted too (the divisor is then invariant and m = 0);
    the resolution driver needs this for tangencies with dicritical components.
    """
    nu = algebraic_multiplicity(germ)
    dicritical = nu > 0 and is_dicritical(germ)
    expected = nu + (1 if dicritical else 0)
    strict: dict[int, OneFormGerm] = {}
    total: dict[int, tuple[Poly, Poly]] = {}
    for chart in (CHART1, CHART2):
        a, b = total_transform(germ, chart)
        var = chart.divisor_var
        m = _divisor_order(a, b, var)
        if m != expected:
            raise AssertionError(
                f"divisor exponent {m} in chart {chart.index}, expected {expected}"
            )
        shift = (m, 0) if var == 0 else (0, m)
        sa, sb = a.shift_down(shift), b.shift_down(shift)
        if not (sa.restrict(var, 0) or sb.restrict(var, 0)):
            raise AssertionError("strict transform still divisible by the divisor coordinate")
        strict[chart.index] = OneFormGerm(sa, sb)
        total[chart.index] = (a, b)
    return BlowupResult(nu, dicritical, expected, strict, total)


def pullback_scalar(f: Poly, chart: Chart, strict: bool = False) -> Poly:
    g = f.substitute(list(chart.substitution()))
    if strict and f:
        k = f.order()
        g = g.shift_down((k, 0) if chart.divisor_var == 0 else (0, k))
    return g


def pushdown_param(
    gamma: tuple[UPoly, UPoly],
    chart: Chart,
    center: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0)),
) -> tuple[UPoly, UPoly]:
    """Image in the parent chart of a parametrization centered at ``center``."""
    u = gamma[0] + center[0]
    w = gamma[1] + center[1]
    if chart.index == 1:
        return u, u * w
    return u * w, w
