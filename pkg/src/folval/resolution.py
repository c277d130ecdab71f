"""Reduction of singularities by iterated point blow-ups.

The driver keeps every infinitely near point in its own centered chart, with
the exceptional components through it being coordinate axes.  A point is
blown up when it is not *simple*:

* a non-reduced singular point;
* a singular point lying on a dicritical component;
* a regular point where a dicritical component is tangent to the foliation,
  or where two dicritical components meet.

The last two rules make every dicritical component of the final model
everywhere transverse to the foliation and disjoint from other dicritical
components.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    Poly,
    UPoly,
    modular_inverse,
    rational_values,
    split_rational_part,
    squarefree_decomposition,
    upoly_gcd,
)
from .blowup import Chart, blowup
from .errors import PreconditionError, ResolutionDepthError, UnsupportedFieldError
from .foliation import (
    Kind,
    OneFormGerm,
    SingularityClass,
    algebraic_multiplicity,
    branch_direction,
    classify,
    restriction,
    translate,
    weak_index_along,
)

DEFAULT_MAX_DEPTH = 64


@dataclass
class InfNearPoint:
    id: int
    stage: int
    parent: int | None
    chart: int | None
    coords: tuple[Fraction, Fraction] | None
    germ: OneFormGerm | None
    cls: SingularityClass
    x_axis: int | None = None
    y_axis: int | None = None
    factor: UPoly | None = None
    component_born: int | None = None
    tangent_component: int | None = None

    @property
    def V(self) -> tuple[int, ...]:
        return tuple(c for c in (self.x_axis, self.y_axis) if c is not None)

    @property
    def is_conjugate(self) -> bool:
        """Whether this record stands for all roots of an irrational factor."""
        return self.factor is not None

    @property
    def count(self) -> int:
        return self.factor.degree if self.factor is not None else 1

    @property
    def is_corner(self) -> bool:
        return len(self.V) == 2

    @property
    def blown_up(self) -> bool:
        return self.component_born is not None

    def axis_of(self, component: int) -> str:
        if self.x_axis == component:
            return "x=0"
        if self.y_axis == component:
            return "y=0"
        raise ValueError(f"component {component} does not pass through point {self.id}")

    def to_parent(self) -> tuple[Poly, Poly]:
        """Parent-center coordinates as polynomials in this point's coordinates."""
        if self.chart is None or self.coords is None:
            raise ValueError("point has no polynomial chart map")
        return Chart(self.chart).substitution(self.coords)


@dataclass
class Component:
    id: int
    birth_point: int
    stage: int
    dicritical: bool
    rho: int
    resident_points: list[int] = field(default_factory=list)

    @property
    def epsilon(self) -> int:
        return 1 if self.dicritical else 0


@dataclass
class TangentSaddleNode:
    point: int
    component: int
    weak_index: int
    count: int = 1


@dataclass
class ResolutionTree:
    root: OneFormGerm
    points: list[InfNearPoint] = field(default_factory=list)
    components: list[Component] = field(default_factory=list)
    corners: set[frozenset[int]] = field(default_factory=set)
    blowup_order: list[int] = field(default_factory=list)
    _maps: dict[int, tuple[Poly, Poly]] = field(default_factory=dict, repr=False)

    def point(self, pid: int) -> InfNearPoint:
        return self.points[pid]

    def component(self, cid: int) -> Component:
        return self.components[cid]

    @property
    def root_point(self) -> InfNearPoint:
        return self.points[0]

    def neighbours(self, cid: int) -> list[int]:
        return sorted(next(iter(pair - {cid})) for pair in self.corners if cid in pair)

    def val(self, cid: int) -> int:
        return len(self.neighbours(cid))

    def final_points(self) -> list[InfNearPoint]:
        return [p for p in self.points if not p.blown_up]

    def centers(self) -> list[InfNearPoint]:
        return [self.points[i] for i in self.blowup_order]

    def ancestors(self, pid: int) -> list[int]:
        """Centers below a point, nearest first (the point itself excluded)."""
        out = []
        p = self.points[pid].parent
        while p is not None:
            out.append(p)
            p = self.points[p].parent
        return out

    def is_descendant(self, pid: int, of: int) -> bool:
        return pid == of or of in self.ancestors(pid)

    def is_above(self, q: int, cid: int) -> bool:
        """Whether component ``cid`` arises in the reduction of the germ at ``q``."""
        return self.is_descendant(self.components[cid].birth_point, q)

    def composite_map(self, pid: int) -> tuple[Poly, Poly]:
        """Root coordinates as polynomials in the local coordinates at ``pid``."""
        if pid in self._maps:
            return self._maps[pid]
        pt = self.points[pid]
        if pt.parent is None:
            result = (Poly.var(0), Poly.var(1))
        else:
            px, py = self.composite_map(pt.parent)
            local = list(pt.to_parent())
            result = (px.substitute(local), py.substitute(local))
        self._maps[pid] = result
        return result

    def component_map(self, cid: int) -> tuple[Poly, Poly]:
        """Root coordinates in chart 1 of the blow-up creating ``cid`` (where it is {x=0})."""
        birth = self.components[cid].birth_point
        bx, by = self.composite_map(birth)
        sub = list(Chart(1).substitution())
        return bx.substitute(sub), by.substitute(sub)

    def to_dict(self) -> dict:
        """JSON-ready dump; components are numbered from 1 as D1, D2, ..."""

        def label(c: int | None) -> int | None:
            return None if c is None else c + 1

        pts = []
        for p in self.points:
            pts.append(
                {
                    "id": p.id,
                    "stage": p.stage,
                    "parent": p.parent,
                    "chart": p.chart,
                    "coords": None if p.coords is None else [str(c) for c in p.coords],
                    "factor": None if p.factor is None else p.factor.format("y"),
                    "count": p.count,
                    "components": [label(c) for c in p.V],
                    "class": p.cls.kind.value,
                    "weak_index": p.cls.weak_index,
                    "tangent_component": label(p.tangent_component),
                    "blown_up_into": label(p.component_born),
                    "germ": None if p.germ is None else {"P": str(p.germ.P), "Q": str(p.germ.Q)},
                }
            )
        comps = [
            {
                "id": label(c.id),
                "birth_point": c.birth_point,
                "stage": c.stage,
                "dicritical": c.dicritical,
                "rho": c.rho,
                "val": self.val(c.id),
                "epsilon": c.epsilon,
                "neighbours": [label(n) for n in self.neighbours(c.id)],
            }
            for c in self.components
        ]
        return {
            "root": {"P": str(self.root.P), "Q": str(self.root.Q)},
            "blowups": len(self.blowup_order),
            "blowup_order": list(self.blowup_order),
            "components": comps,
            "corners": sorted(sorted(label(c) for c in pair) for pair in self.corners),
            "points": pts,
        }


# ---------------------------------------------------------------------------
# Local tests used by the driver
# ---------------------------------------------------------------------------


def _tangent_at_regular(germ: OneFormGerm, branch: str) -> bool:
    # omega restricted to {x=0} is Q(0,y) dy, to {y=0} it is P(x,0) dx
    coeff = germ.Q if branch == "x=0" else germ.P
    return not coeff.constant_term()


def _needs_blowup(tree: ResolutionTree, pt: InfNearPoint) -> bool:
    dicritical = [c for c in pt.V if tree.components[c].dicritical]
    if pt.cls.is_singular:
        return not pt.cls.is_reduced or bool(dicritical)
    if len(dicritical) >= 2:
        return True
    return any(_tangent_at_regular(pt.germ, pt.axis_of(c)) for c in dicritical)


def singular_points_on_divisor(strict: OneFormGerm, branch: str = "x=0") -> list[tuple[Fraction, Fraction]]:
    """Rational singular points of a strict transform on a divisor axis.

    Only the affine part of the axis is scanned; the point at infinity of the
    divisor is the origin of the other chart and is examined there.
    """
    p = restriction(strict.P, branch)
    q = restriction(strict.Q, branch)
    common = upoly_gcd(p, q)
    if common.is_zero:
        raise PreconditionError("strict transform vanishes along the divisor")
    if common.degree < 1:
        return []
    roots, rest = split_rational_part(common)
    if rest.degree >= 1:
        raise UnsupportedFieldError("singular point with irrational coordinate", rest, "y" if branch == "x=0" else "x")
    if branch == "x=0":
        return [(Fraction(0), r) for r, _ in roots]
    return [(r, Fraction(0)) for r, _ in roots]


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


class _Builder:
    def __init__(self, germ: OneFormGerm, conjugate_points: bool):
        self.tree = ResolutionTree(root=germ)
        self.conjugate_points = conjugate_points

    def add_point(self, **kw) -> InfNearPoint:
        pt = InfNearPoint(id=len(self.tree.points), **kw)
        self.tree.points.append(pt)
        for c in pt.V:
            self.tree.components[c].resident_points.append(pt.id)
        return pt

    def blow_up(self, q: InfNearPoint) -> list[int]:
        tree = self.tree
        res = blowup(q.germ)
        rho = max(1, sum(tree.components[c].rho for c in q.V))
        comp = Component(
            id=len(tree.components),
            birth_point=q.id,
            stage=q.stage + 1,
            dicritical=res.dicritical,
            rho=rho,
        )
        tree.components.append(comp)
        q.component_born = comp.id
        tree.blowup_order.append(q.id)
        D = comp.id
        if len(q.V) == 2:
            tree.corners.discard(frozenset(q.V))
        for c in q.V:
            tree.corners.add(frozenset((c, D)))

        pending: list[int] = []
        stage = q.stage + 1

        def examine(chart: int, coords, germ: OneFormGerm, x_axis, y_axis) -> None:
            cls = classify(germ)
            pt = InfNearPoint(
                id=-1, stage=stage, parent=q.id, chart=chart, coords=coords,
                germ=germ, cls=cls, x_axis=x_axis, y_axis=y_axis,
            )
            needs = _needs_blowup(tree, pt)
            if cls.is_singular or needs or pt.is_corner:
                kw = {k: getattr(pt, k) for k in ("stage", "parent", "chart", "coords", "germ", "cls", "x_axis", "y_axis")}
                registered = self.add_point(**kw)
                if needs:
                    pending.append(registered.id)

        s1 = res.strict[1]
        if res.dicritical:
            key = restriction(s1.Q, "x=0")
        else:
            if not restriction(s1.Q, "x=0").is_zero:
                raise AssertionError("non-dicritical divisor is not invariant")
            key = restriction(s1.P, "x=0")
        roots, rest = split_rational_part(key)
        bs = {r for r, _ in roots}
        if q.y_axis is not None:
            bs.add(Fraction(0))
        for b in sorted(bs):
            coords = (Fraction(0), b)
            examine(1, coords, translate(s1, coords), D, q.y_axis if b == 0 else None)
        if rest.degree >= 1:
            if res.dicritical:
                raise UnsupportedFieldError(
                    "tangency with a dicritical component at an irrational point", rest
                )
            if not self.conjugate_points:
                raise UnsupportedFieldError("singular point with irrational coordinate", rest)
            self.conjugate_classes(q, D, s1, rest, stage)

        examine(2, (Fraction(0), Fraction(0)), res.strict[2], q.x_axis, D)
        return pending

    def conjugate_classes(self, q: InfNearPoint, D: int, s1: OneFormGerm, rest: UPoly, stage: int) -> None:
        """Certify irrational singular points on an invariant divisor as reduced.

        On {x=0} with Q = x*q1, the linear part at (0, c) is triangular with
        eigenvalues -q1(0, c) and dP(0, y)/dy at c; everything is decided in
        Q[y]/(f) without ever naming c.
        """
        p_on = restriction(s1.P, "x=0")
        a_poly = -restriction(s1.Q.diff(0), "x=0")
        b_poly = p_on.derivative()
        for f, e in squarefree_decomposition(rest):
            f0 = upoly_gcd(f, a_poly % f) if a_poly % f else f
            f1 = f.exact_div(f0) if f0.degree >= 1 else f
            if f0.degree < 1:
                f0 = UPoly([1])
            if e == 1:
                if f0.degree >= 1:
                    # one zero eigenvalue whose kernel is transverse to the divisor
                    self.add_point(
                        stage=stage, parent=q.id, chart=1, coords=None, germ=None,
                        cls=SingularityClass(Kind.SADDLE_NODE), x_axis=D, factor=f0,
                    )
                if f1.degree >= 1:
                    ratio = (a_poly * modular_inverse(b_poly, f1)) % f1
                    for value in rational_values(ratio, f1):
                        if value > 0:
                            raise UnsupportedFieldError(
                                f"non-reduced point (eigenvalue ratio {value}) with irrational coordinate", f1
                            )
                    self.add_point(
                        stage=stage, parent=q.id, chart=1, coords=None, germ=None,
                        cls=SingularityClass(Kind.NON_DEGENERATE), x_axis=D, factor=f1,
                    )
            else:
                if f0.degree >= 1:
                    raise UnsupportedFieldError("non-reduced point with irrational coordinate", f0)
                self.add_point(
                    stage=stage, parent=q.id, chart=1, coords=None, germ=None,
                    cls=SingularityClass(
                        Kind.SADDLE_NODE,
                        weak_direction=branch_direction("x=0"),
                        weak_index=e,
                    ),
                    x_axis=D, factor=f1,
                )


def _pick(pending: list[int], order: str | int, rng: random.Random | None) -> int:
    if order == "lowest":
        choice = min(pending)
    elif order == "highest":
        choice = max(pending)
    else:
        choice = rng.choice(sorted(pending))
    pending.remove(choice)
    return choice


def reduce(
    germ: OneFormGerm,
    max_depth: int = DEFAULT_MAX_DEPTH,
    order: str | int = "lowest",
    conjugate_points: bool = False,
) -> ResolutionTree:
    """Blow up non-simple points until none is left.

    ``order`` picks the next center among pending points: ``"lowest"`` id
    (default), ``"highest"``, or an integer seed for a shuffled order.  The
    final invariants do not depend on it, only the id labelling does.

    With ``conjugate_points`` enabled, irrational singular points on invariant
    components are accepted when they can be certified reduced exactly.
    """
    if order not in ("lowest", "highest") and not isinstance(order, int):
        raise ValueError(f"unknown blow-up order {order!r}")
    builder = _Builder(germ, conjugate_points)
    tree = builder.tree
    root = builder.add_point(
        stage=0, parent=None, chart=None, coords=(Fraction(0), Fraction(0)),
        germ=germ, cls=classify(germ),
    )
    rng = random.Random(order) if isinstance(order, int) and not isinstance(order, bool) else None
    pending = [root.id] if _needs_blowup(tree, root) else []
    while pending:
        q = tree.points[_pick(pending, order, rng)]
        if q.stage >= max_depth:
            raise ResolutionDepthError(
                f"reduction exceeded depth {max_depth} at point {q.id}", partial=tree
            )
        pending.extend(builder.blow_up(q))
    _finalize(tree)
    return tree


def _finalize(tree: ResolutionTree) -> None:
    for pt in tree.final_points():
        if pt.cls.is_singular and not pt.cls.is_reduced:
            raise AssertionError(f"point {pt.id} left non-reduced")
        if pt.cls.kind is Kind.SADDLE_NODE:
            if pt.is_conjugate:
                if pt.cls.weak_index is not None:
                    pt.tangent_component = pt.x_axis
                continue
            for c in pt.V:
                if tree.components[c].dicritical:
                    continue
                branch = pt.axis_of(c)
                if pt.cls.weak_direction == branch_direction(branch):
                    idx = weak_index_along(pt.germ, branch)
                    pt.cls = SingularityClass(
                        Kind.SADDLE_NODE, pt.cls.weak_direction, pt.cls.strong_direction, idx
                    )
                    pt.tangent_component = c
    for comp in tree.components:
        if not comp.dicritical:
            continue
        for pid in comp.resident_points:
            pt = tree.points[pid]
            if not pt.blown_up and pt.cls.is_singular:
                raise AssertionError(f"dicritical component {comp.id} carries singular point {pid}")
        for other in tree.neighbours(comp.id):
            if tree.components[other].dicritical:
                raise AssertionError(f"dicritical components {comp.id} and {other} meet")


def rho(tree: ResolutionTree, cid: int) -> int:
    return tree.components[cid].rho


def rho_relative(tree: ResolutionTree, q: int, cid: int) -> int:
    """Multiplicity of a component for the germ at ``q``.

    Components through ``q`` that predate it are invariant curves of that
    germ, not part of its exceptional divisor, and are left out.
    """
    if not tree.is_above(q, cid):
        raise PreconditionError(f"component {cid} does not lie above point {q}")
    memo: dict[int, int] = {}

    def rr(c: int) -> int:
        if c not in memo:
            birth = tree.components[c].birth_point
            if birth == q:
                memo[c] = 1
            else:
                bp = tree.points[birth]
                memo[c] = max(1, sum(rr(e) for e in bp.V if tree.is_above(q, e)))
        return memo[c]

    return rr(cid)


def tangent_saddle_nodes(tree: ResolutionTree) -> list[TangentSaddleNode]:
    return [
        TangentSaddleNode(pt.id, pt.tangent_component, pt.cls.weak_index, pt.count)
        for pt in tree.final_points()
        if pt.tangent_component is not None
    ]


def multiplicity_at(tree: ResolutionTree, pid: int) -> int:
    return algebraic_multiplicity(tree.points[pid].germ)
