"""Foliation germs ``omega = P dx + Q dy`` and their local classification.

The dual vector field is ``v = -Q d/dx + P d/dy``; all eigenvalue data is
read off its Jacobian at the origin.  Eigenvalues are never computed: the
positive-rational-ratio test works with the trace and determinant only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebra import Poly, UPoly, coprime, gcd
from .errors import InvariantViolationError

Direction = tuple[Fraction, Fraction]

BRANCHES = ("x=0", "y=0")


@dataclass(frozen=True)
class OneFormGerm:
    P: Poly
    Q: Poly

    def __post_init__(self) -> None:
        if self.P.nvars != 2 or self.Q.nvars != 2:
            raise ValueError("a germ needs bivariate coefficients")
        if self.P.is_zero and self.Q.is_zero:
            raise ValueError("the zero form does not define a foliation")

    @classmethod
    def saturated(cls, P: Poly, Q: Poly) -> OneFormGerm:
        """Divide out the common factor of the coefficients."""
        g = gcd(P, Q)
        if g.is_constant():
            return cls(P, Q)
        return cls(P.exact_div(g), Q.exact_div(g))

    def is_coprime(self) -> bool:
        return coprime(self.P, self.Q)

    def scaled(self, c: Fraction | int) -> OneFormGerm:
        return OneFormGerm(self.P * c, self.Q * c)

    def swapped(self) -> OneFormGerm:
        """The same foliation after exchanging the coordinates x and y."""
        sw = [Poly.var(1), Poly.var(0)]
        return OneFormGerm(self.Q.substitute(sw), self.P.substitute(sw))

    def __str__(self) -> str:
        return f"({self.P}) dx + ({self.Q}) dy"


class Kind(str, Enum):
    REGULAR = "regular"
    NON_DEGENERATE = "non-degenerate"
    SADDLE_NODE = "saddle-node"
    NON_REDUCED = "non-reduced"


@dataclass(frozen=True)
class LinearPart:
    """Jacobian at the origin of the dual field (-Q, P)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @property
    def trace(self) -> Fraction:
        return self.a + self.d

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)


@dataclass(frozen=True)
class SingularityClass:
    kind: Kind
    weak_direction: Direction | None = None
    strong_direction: Direction | None = None
    weak_index: int | None = None

    @property
    def is_reduced(self) -> bool:
        return self.kind in (Kind.NON_DEGENERATE, Kind.SADDLE_NODE)

    @property
    def is_singular(self) -> bool:
        return self.kind is not Kind.REGULAR


def normalize_direction(u: Fraction, w: Fraction) -> Direction:
    if u:
        return (Fraction(1), Fraction(w) / u)
    if w:
        return (Fraction(0), Fraction(1))
    raise ValueError("zero vector has no direction")


def branch_direction(branch: str) -> Direction:
    """Tangent direction of the coordinate branch {x=0} or {y=0}."""
    if branch == "x=0":
        return (Fraction(0), Fraction(1))
    if branch == "y=0":
        return (Fraction(1), Fraction(0))
    raise ValueError(f"unknown branch {branch!r}")


def algebraic_multiplicity(germ: OneFormGerm) -> int:
    orders = [p.order() for p in (germ.P, germ.Q) if p]
    return min(orders)


def linear_part(germ: OneFormGerm) -> LinearPart:
    P, Q = germ.P, germ.Q
    return LinearPart(
        a=-Q.coeff((1, 0)),
        b=-Q.coeff((0, 1)),
        c=P.coeff((1, 0)),
        d=P.coeff((0, 1)),
    )


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def ratio_in_positive_rationals(lin: LinearPart) -> bool:
    """Whether the eigenvalue ratio of an invertible linear part is in Q+.

    With s = trace^2/det the ratio r satisfies r + 1/r = s - 2, so r is a
    positive rational iff s >= 4 and s(s-4) is a rational square.
    """
    s = lin.trace**2 / lin.det
    return s >= 4 and _is_rational_square(s * (s - 4))


def classify(germ: OneFormGerm) -> SingularityClass:
    if algebraic_multiplicity(germ) == 0:
        return SingularityClass(Kind.REGULAR)
    lin = linear_part(germ)
    tau, delta = lin.trace, lin.det
    if lin.is_zero():
        return SingularityClass(Kind.NON_REDUCED)
    if delta:
        if ratio_in_positive_rationals(lin):
            return SingularityClass(Kind.NON_REDUCED)
        return SingularityClass(Kind.NON_DEGENERATE)
    if not tau:
        return SingularityClass(Kind.NON_REDUCED)
    # rank one, nonzero trace: kernel is the weak direction, image the strong one
    if lin.a or lin.b:
        weak = normalize_direction(lin.b, -lin.a)
    else:
        weak = normalize_direction(lin.d, -lin.c)
    if lin.a or lin.c:
        strong = normalize_direction(lin.a, lin.c)
    else:
        strong = normalize_direction(lin.b, lin.d)
    return SingularityClass(Kind.SADDLE_NODE, weak_direction=weak, strong_direction=strong)


def is_invariant(germ: OneFormGerm, branch: str) -> bool:
    """Whether a coordinate axis is an invariant curve of the foliation."""
    if branch == "y=0":
        return germ.P.restrict(1, 0).is_zero
    if branch == "x=0":
        return germ.Q.restrict(0, 0).is_zero
    raise ValueError(f"unknown branch {branch!r}")


def weak_index_along(germ: OneFormGerm, branch: str) -> int:
    """Tangency index of the foliation along an invariant coordinate axis.

    Along {y=0} this is ord_t Q(t, 0); along {x=0} the roles of P and Q swap.
    """
    if not is_invariant(germ, branch):
        raise InvariantViolationError(f"branch {{{branch}}} is not invariant by {germ}")
    if branch == "y=0":
        restricted = germ.Q.restrict(1, 0).to_upoly(0)
    else:
        restricted = germ.P.restrict(0, 0).to_upoly(1)
    if restricted.is_zero:
        raise InvariantViolationError(f"the foliation is singular along {{{branch}}}")
    return restricted.ord()


def translate(germ: OneFormGerm, point: tuple[Fraction | int, Fraction | int]) -> OneFormGerm:
    """Re-center the germ at ``point`` (substitute x+a, y+b)."""
    a, b = point
    if not a and not b:
        return germ
    images = [Poly.var(0) + a, Poly.var(1) + b]
    return OneFormGerm(germ.P.substitute(images), germ.Q.substitute(images))


def restriction(p: Poly, branch: str) -> UPoly:
    """Restrict a bivariate polynomial to a coordinate axis, as a UPoly."""
    if branch == "x=0":
        return p.restrict(0, 0).to_upoly(1)
    return p.restrict(1, 0).to_upoly(0)
