"""Foliations of the projective plane given by homogeneous 1-forms.

``A dx + B dy + C dz`` with A, B, C homogeneous of degree d+1 satisfying
the Euler identity defines a foliation of degree d.  Each singular point is
reduced in an affine chart, and the per-component orders feed the global
degree bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, UPoly, gcd, resultant, split_rational_part, upoly_gcd
from .errors import FolvalError, PreconditionError, ValidationError
from .foliation import OneFormGerm, translate
from .resolution import DEFAULT_MAX_DEPTH, reduce
from .valuation import ValuationReport, verify

ProjPoint = tuple[Fraction, Fraction, Fraction]

HYPOTHESIS_DISCLAIMER = (
    "The degree bound assumes the reduced foliation has no special invariant curve; "
    "this is not checked."
)

_X3, _Y3, _Z3 = (Poly.var(i, 3) for i in range(3))


@dataclass(frozen=True)
class ProjForm:
    A: Poly
    B: Poly
    C: Poly

    def __post_init__(self) -> None:
        for p in self.coeffs:
            if p.nvars != 3:
                raise ValueError("projective coefficients need three variables")

    @property
    def coeffs(self) -> tuple[Poly, Poly, Poly]:
        return self.A, self.B, self.C

    @property
    def d(self) -> int:
        return max(p.degree() for p in self.coeffs if p) - 1

    def __call__(self, point: ProjPoint) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(p.evaluate(point) for p in self.coeffs)


def euler(form: ProjForm) -> Poly:
    return form.A * _X3 + form.B * _Y3 + form.C * _Z3


def integrability(form: ProjForm) -> Poly:
    """Coefficient of dx^dy^dz in Omega ^ dOmega."""
    A, B, C = form.coeffs
    return A * (C.diff(1) - B.diff(2)) + B * (A.diff(2) - C.diff(0)) + C * (B.diff(0) - A.diff(1))


def _bivariate_gcd(polys: list[Poly]) -> Poly | None:
    nonzero = [p for p in polys if p]
    if not nonzero:
        return None
    g = nonzero[0]
    for p in nonzero[1:]:
        g = gcd(g, p)
    return g.normalized()


def validate(form: ProjForm) -> ProjForm:
    nonzero = [p for p in form.coeffs if p]
    if not nonzero:
        raise ValidationError("the zero form does not define a foliation")
    degrees = {p.degree() for p in nonzero}
    if len(degrees) > 1 or not all(p.is_homogeneous() for p in nonzero):
        raise ValidationError(f"coefficients are not homogeneous of one degree (degrees {sorted(degrees)})")
    if degrees == {0}:
        raise ValidationError("coefficients of degree 0 cannot satisfy the Euler identity")
    e = euler(form)
    if e:
        raise ValidationError(f"Euler identity fails: A*x + B*y + C*z = {e}")
    # a homogeneous common factor either is divisible by z or survives z = 1
    if all(not p.restrict(2, 0) for p in form.coeffs):
        raise ValidationError("coefficients share the factor z")
    affine = [p.substitute([Poly.var(0), Poly.var(1), Poly.constant(1)]) for p in form.coeffs]
    g = _bivariate_gcd(affine)
    if g is not None and not g.is_constant():
        raise ValidationError(f"coefficients share a common factor ({g} after z = 1)")
    i = integrability(form)
    if i:
        raise ValidationError(f"integrability fails: Omega ^ dOmega = {i}")
    return form


def normalize_point(point) -> ProjPoint:
    """Scale homogeneous coordinates so the last nonzero one is 1."""
    p = tuple(Fraction(c) for c in point)
    if len(p) != 3 or not any(p):
        raise ValueError(f"not a projective point: {point!r}")
    last = next(c for c in reversed(p) if c)
    return tuple(c / last for c in p)


CHARTS = ("z=1", "y=1", "x=1")
# chart -> (index set to 1, the two affine variables in order)
_CHART_AXES = {"z=1": (2, (0, 1)), "y=1": (1, (0, 2)), "x=1": (0, (1, 2))}


def default_chart(point: ProjPoint) -> str:
    for chart in CHARTS:
        if point[_CHART_AXES[chart][0]]:
            return chart
    raise ValueError("zero point")


def affine_germ(form: ProjForm, point, chart: str | None = None) -> OneFormGerm:
    """The germ of the foliation at ``point``, in the given chart, centered at the origin."""
    point = normalize_point(point)
    if chart is None:
        chart = default_chart(point)
    if chart not in _CHART_AXES:
        raise ValueError(f"unknown chart {chart!r}")
    fixed, (u, w) = _CHART_AXES[chart]
    if not point[fixed]:
        raise PreconditionError(f"point {format_point(point)} lies outside the chart {chart}")
    images = [Poly.zero(2)] * 3
    images[fixed] = Poly.constant(1, 2)
    images[u] = Poly.var(0)
    images[w] = Poly.var(1)
    coeffs = [p.substitute(images) for p in form.coeffs]
    P, Q = coeffs[u], coeffs[w]
    if not P and not Q:
        raise ValidationError("form vanishes identically in this chart")
    center = (point[u] / point[fixed], point[w] / point[fixed])
    germ = translate(OneFormGerm.saturated(P, Q), center)
    return OneFormGerm.saturated(germ.P, germ.Q)


def _affine_zeros(a: Poly, b: Poly) -> tuple[list[tuple[Fraction, Fraction]], bool]:
    """Rational common zeros of coprime bivariate a, b; flag False if some may be missed."""
    if not a or not b:
        only = a or b
        if not only.is_constant():
            raise ValidationError("singular locus is not finite")
        return [], True
    complete = True
    res = resultant(a, b, 1)
    if res.is_zero:
        raise ValidationError("singular locus is not finite")
    if res.degree < 1:
        return [], True
    xs, rest = split_rational_part(res)
    if rest.degree >= 1:
        complete = False
    points = []
    for x0, _ in xs:
        ua = a.restrict(0, x0).to_upoly(1)
        ub = b.restrict(0, x0).to_upoly(1)
        g = upoly_gcd(ua, ub)
        if g.is_zero:
            raise ValidationError("singular locus is not finite")
        if g.degree < 1:
            continue
        ys, grest = split_rational_part(g)
        if grest.degree >= 1:
            complete = False
        points.extend((x0, y0) for y0, _ in ys)
    return points, complete


def find_rational_singularities(form: ProjForm) -> tuple[list[ProjPoint], bool]:
    """Rational singular points, and whether every singular point is rational.

    The flag is conservative: it may be False even when nothing was missed.
    """
    affine = [p.substitute([Poly.var(0), Poly.var(1), Poly.constant(1)]) for p in form.coeffs]
    # on z = 1 the Euler identity makes C a combination of A and B
    pts, complete = _affine_zeros(affine[0], affine[1])
    found = [normalize_point((x0, y0, 1)) for x0, y0 in pts]
    # line at infinity: points [1 : t : 0] and [0 : 1 : 0]
    t_line = [p.substitute([Poly.constant(1, 1), Poly.var(0, 1), Poly.zero(1)]).to_upoly(0) for p in form.coeffs]
    g = UPoly()
    for u in t_line:
        g = upoly_gcd(g, u)
    if g.is_zero:
        raise ValidationError("the line at infinity is pointwise singular")
    if g.degree >= 1:
        ts, rest = split_rational_part(g)
        if rest.degree >= 1:
            complete = False
        found.extend(normalize_point((1, t, 0)) for t, _ in ts)
    if not any(form((Fraction(0), Fraction(1), Fraction(0)))):
        found.append((Fraction(0), Fraction(1), Fraction(0)))
    return sorted(set(found)), complete


def format_point(point: ProjPoint) -> str:
    return "[" + ":".join(str(c) for c in point) + "]"


def components_term(report: ValuationReport) -> int:
    return sum((c.nu_F - 1) ** 2 for c in report.components)


def substituted_term(report: ValuationReport) -> int:
    """The same sum with each order rewritten through the separatrix identity."""
    return sum(
        (c.nu_Psi + c.xi - (1 if c.dicritical else 2)) ** 2 for c in report.components
    )


@dataclass
class PointAudit:
    point: ProjPoint
    chart: str
    germ: OneFormGerm | None = None
    report: ValuationReport | None = None
    error: str | None = None

    @property
    def term(self) -> int:
        return components_term(self.report) if self.report else 0

    @property
    def substituted(self) -> int:
        return substituted_term(self.report) if self.report else 0

    @property
    def consistent(self) -> bool:
        return self.report is not None and self.term == self.substituted


@dataclass
class AuditReport:
    d: int
    points: list[PointAudit] = field(default_factory=list)
    complete: bool | None = None
    disclaimer: str = HYPOTHESIS_DISCLAIMER

    @property
    def lhs(self) -> int:
        return sum(p.term for p in self.points)

    @property
    def lhs_substituted(self) -> int:
        return sum(p.substituted for p in self.points)

    @property
    def rhs(self) -> int:
        return (self.d - 1) ** 2

    @property
    def bound_ok(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def consistent(self) -> bool:
        return all(p.consistent for p in self.points) and self.lhs == self.lhs_substituted

    @property
    def errors(self) -> list[str]:
        return [f"{format_point(p.point)}: {p.error}" for p in self.points if p.error]

    @property
    def ok(self) -> bool:
        return (
            not self.errors
            and self.consistent
            and self.bound_ok
            and all(p.report.ok for p in self.points)
        )


def audit(
    form: ProjForm,
    points=None,
    max_depth: int = DEFAULT_MAX_DEPTH,
    conjugate_points: bool = False,
) -> AuditReport:
    """Reduce every singular point and evaluate the degree bound.

    With ``points`` omitted the rational singular locus is searched for, and
    the report records whether it is known to be complete.
    """
    validate(form)
    d = form.d
    if d < 1:
        raise PreconditionError("the degree bound needs d >= 1")
    complete: bool | None = None
    if points is None:
        points, complete = find_rational_singularities(form)
    report = AuditReport(d=d, complete=complete)
    for raw in points:
        point = normalize_point(raw)
        chart = default_chart(point)
        entry = PointAudit(point, chart)
        report.points.append(entry)
        if any(form(point)):
            entry.error = "not a singular point"
            continue
        try:
            entry.germ = affine_germ(form, point, chart)
            tree = reduce(entry.germ, max_depth=max_depth, conjugate_points=conjugate_points)
            entry.report = verify(tree)
        except FolvalError as exc:
            entry.error = f"{type(exc).__name__}: {exc}"
    return report
