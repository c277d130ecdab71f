from fractions import Fraction

import pytest

from folval.algebra import Poly
from folval.errors import PreconditionError, ValidationError
from folval.foliation import Kind, OneFormGerm, classify, linear_part
from folval.projective import (
    ProjForm,
    affine_germ,
    audit,
    default_chart,
    euler,
    find_rational_singularities,
    format_point,
    integrability,
    normalize_point,
    validate,
)

X, Y, Z = (Poly.var(i, 3) for i in range(3))
x, y = Poly.var(0), Poly.var(1)
F = Fraction


def from_field(a: Poly, b: Poly, c: Poly) -> ProjForm:
    """The form obtained by contracting the volume with the radial field and (a, b, c)."""
    return ProjForm(Y * c - Z * b, Z * a - X * c, X * b - Y * a)


DEGREE_ONE = ProjForm(-Y * Z, Z * (X + Y), -Y * Y)
THREE_NODES = ProjForm(Y * Z, X * Z, -2 * X * Y)


def test_contracted_fields_are_valid():
    for field in [(X, 2 * Y, 3 * Z), (Y, X + Y, Z), (Y * Y + X * Z, X * X, Z * Z)]:
        form = from_field(*field)
        assert euler(form).is_zero and integrability(form).is_zero
        assert validate(form) is form


def test_validate_rejections():
    with pytest.raises(ValidationError, match="zero form"):
        validate(ProjForm(Poly.zero(3), Poly.zero(3), Poly.zero(3)))
    with pytest.raises(ValidationError, match="Euler"):
        validate(ProjForm(Y, X, Poly.zero(3)))
    with pytest.raises(ValidationError):
        validate(ProjForm(Y * Y, X, Poly.zero(3)))
    with pytest.raises(ValidationError):
        # a common factor z: not saturated
        validate(ProjForm(Y * Z * Z, -X * Z * Z, Poly.zero(3)))
    with pytest.raises(ValidationError):
        validate(from_field(X, Y, Z))
    validate(DEGREE_ONE)
    assert DEGREE_ONE.d == 1 and THREE_NODES.d == 1


def test_points_and_charts():
    assert normalize_point((2, 4, 2)) == (F(1), F(2), F(1))
    assert normalize_point((3, 0, 0)) == (F(1), F(0), F(0))
    assert default_chart((F(0), F(1), F(0))) == "y=1"
    assert format_point((F(0), F(0), F(1))) == "[0:0:1]"
    with pytest.raises(ValueError):
        normalize_point((0, 0, 0))


def test_affine_germ():
    rotation = ProjForm(Y, -X, Poly.zero(3))
    assert affine_germ(rotation, (0, 0, 1)) == OneFormGerm(y, -x)
    shifted = affine_germ(rotation, (1, 0, 1))
    assert shifted == OneFormGerm(y, -x - 1)
    lin = linear_part(shifted)
    assert lin.a * lin.d - lin.b * lin.c != 0
    assert find_rational_singularities(rotation) == ([(F(0), F(0), F(1))], True)
    assert affine_germ(DEGREE_ONE, (0, 0, 1)) == OneFormGerm(-y, x + y)
    assert classify(affine_germ(THREE_NODES, (0, 0, 1))).kind is Kind.NON_DEGENERATE
    assert classify(affine_germ(THREE_NODES, (1, 0, 0))).kind is Kind.NON_REDUCED
    with pytest.raises(PreconditionError):
        affine_germ(DEGREE_ONE, (1, 0, 0), chart="z=1")


def test_rational_singularities_match_eigenvectors():
    # singular points of a contracted linear field are the eigenvectors of its matrix
    pts, complete = find_rational_singularities(from_field(X, 2 * Y, 3 * Z))
    assert complete and pts == sorted([(F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1))])
    pts, complete = find_rational_singularities(DEGREE_ONE)
    assert complete and [format_point(p) for p in pts] == ["[0:0:1]", "[1:0:0]"]
    for p in pts:
        assert not any(DEGREE_ONE(p))


def test_irrational_singularities_clear_the_flag():
    # eigenvalues +-sqrt(2): only the z-axis eigenvector is rational
    pts, complete = find_rational_singularities(from_field(2 * Y, X, Z))
    assert pts == [(F(0), F(0), F(1))] and complete is False


def test_audit_consistent_and_bounded():
    report = audit(DEGREE_ONE)
    assert report.complete and report.errors == []
    assert report.lhs == report.lhs_substituted == 0 <= report.rhs
    assert report.consistent and report.bound_ok and report.ok


def test_audit_flags_resonant_nodes():
    # the saddle at the origin adds nothing; the two 1:2 resonant nodes each
    # contribute (3-1)^2, so the bound (d-1)^2 = 0 is exceeded
    report = audit(THREE_NODES)
    assert [p.term for p in report.points] == [0, 4, 4]
    assert report.lhs == 8 and report.rhs == 0
    assert report.consistent and not report.bound_ok and not report.ok


def test_audit_totals_are_sums():
    for form in (DEGREE_ONE, THREE_NODES, from_field(X, 2 * Y, 3 * Z), from_field(Y, X + Y, Z)):
        report = audit(form)
        assert report.lhs == sum(p.term for p in report.points)
        assert all(p.consistent for p in report.points)


def test_audit_with_supplied_points():
    report = audit(DEGREE_ONE, points=[(0, 0, 5), (1, 1, 1)])
    assert report.complete is None
    assert report.points[0].point == (F(0), F(0), F(1))
    assert report.errors == ["[1:1:1]: not a singular point"] and not report.ok


def test_audit_needs_positive_degree():
    with pytest.raises(PreconditionError):
        audit(ProjForm(Y, -X, Poly.zero(3)))


def test_audit_records_per_point_failures():
    # the rational point is fine, the field over Q(sqrt 2) is not searched
    report = audit(from_field(2 * Y, X, Z))
    assert report.complete is False and report.errors == []
