"""Separatrix branches as combinatorial data, and balanced divisors.

A branch is never written down as an equation.  It is pinned by the point
where its strict transform crosses the exceptional divisor, and carries the
multiplicities of its strict transforms at every blown-up center below that
point.  Those multiplicities are read off a smooth curvetta through the
attach point, pushed down chart by chart: the actual separatrix there (maybe
only formal) is transverse to the same component, so it shares them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, UPoly, eval_on_param
from .errors import InfiniteIntersectionError
from .foliation import Kind, branch_direction, is_invariant, restriction
from .resolution import ResolutionTree

Param = tuple[UPoly, UPoly]

ISOLATED_STRONG = "isolated-strong"
ISOLATED_WEAK = "isolated-weak"
DICRITICAL_CURVETTA = "dicritical-curvetta"
LEAF = "leaf"


@dataclass
class BranchData:
    component: int | None
    point: int | None
    kind: str
    m: dict[int, int]
    parametrization: Param | None = None
    attach_coords: tuple[Fraction, Fraction] | None = None
    formal: bool = False
    root_index: int = 0

    @property
    def root_multiplicity(self) -> int:
        return self.m.get(0, 0)

    def multiplicity_at(self, center: int) -> int:
        return self.m.get(center, 0)


@dataclass
class SeparatrixDivisor:
    entries: list[tuple[BranchData, int]] = field(default_factory=list)

    def nu_p(self) -> int:
        return sum(a * b.root_multiplicity for b, a in self.entries)

    def multiplicity_at(self, center: int) -> int:
        """Multiplicity at ``center`` of the strict transform (negative parts allowed)."""
        return sum(a * b.multiplicity_at(center) for b, a in self.entries)

    @property
    def zero_part(self) -> list[tuple[BranchData, int]]:
        return [(b, a) for b, a in self.entries if a > 0]

    @property
    def pole_part(self) -> list[tuple[BranchData, int]]:
        return [(b, -a) for b, a in self.entries if a < 0]

    def balance(self, tree: ResolutionTree) -> dict[int, int]:
        """Sum of coefficients over branches attached to each dicritical component."""
        sums = {c.id: 0 for c in tree.components if c.dicritical}
        for b, a in self.entries:
            if b.component in sums:
                sums[b.component] += a
        return sums

    def is_balanced(self, tree: ResolutionTree) -> bool:
        return all(s == 2 - tree.val(c) for c, s in self.balance(tree).items())

    def is_primitive(self, tree: ResolutionTree) -> bool:
        return all(
            a in (-1, 1)
            for b, a in self.entries
            if b.component is not None and tree.components[b.component].dicritical
        )


# ---------------------------------------------------------------------------
# Curvetta push-down
# ---------------------------------------------------------------------------


def _transverse(branch: str, slope: int) -> Param:
    t = UPoly([0, 1])
    if branch == "x=0":
        return t, t * slope
    return t * slope, t


def _multiplicity(gamma: Param) -> int:
    orders = [g.ord() for g in gamma if g]
    m = min(orders)
    if m < 1:
        raise AssertionError("pushed-down curvetta misses the center")
    return m


def push_down(tree: ResolutionTree, pid: int, gamma: Param) -> tuple[dict[int, int], Param]:
    """Push a parametrization at point ``pid`` to the root.

    Returns the multiplicity at every center passed on the way down, and the
    parametrization in root coordinates.
    """
    m: dict[int, int] = {}
    pt = tree.points[pid]
    while pt.parent is not None:
        to_parent = pt.to_parent()
        gamma = (eval_on_param(to_parent[0], gamma), eval_on_param(to_parent[1], gamma))
        pt = tree.points[pt.parent]
        m[pt.id] = _multiplicity(gamma)
    return m, gamma


def free_curvetta(
    tree: ResolutionTree, cid: int, b: Fraction, slope: int = 0
) -> tuple[dict[int, int], Param]:
    """Curvetta through the chart-1 point (0, b) of component ``cid``."""
    birth = tree.components[cid].birth_point
    t = UPoly([0, 1])
    # chart-1 coordinates of the blow-up at birth: (x, y) -> (x, x*y)
    u = t
    w = t * slope + b
    gamma: Param = (u, u * w)
    m, root_gamma = push_down(tree, birth, gamma)
    m[birth] = _multiplicity(gamma)
    return m, root_gamma


def attach_curvetta(tree: ResolutionTree, pid: int, cid: int, slope: int = 0) -> tuple[dict[int, int], Param]:
    pt = tree.points[pid]
    return push_down(tree, pid, _transverse(pt.axis_of(cid), slope))


def _free_coordinates(tree: ResolutionTree, cid: int, count: int, offset: int) -> list[Fraction]:
    birth = tree.components[cid].birth_point
    occupied = {
        p.coords[1]
        for p in tree.points
        if p.parent == birth and p.chart == 1 and p.coords is not None
    }
    out: list[Fraction] = []
    b = 1 + offset
    while len(out) < count:
        if Fraction(b) not in occupied:
            out.append(Fraction(b))
        b += 1
    return out


# ---------------------------------------------------------------------------
# Branch enumeration
# ---------------------------------------------------------------------------


def _root_branches(tree: ResolutionTree) -> list[BranchData]:
    root = tree.root_point
    kind = root.cls.kind
    if kind is Kind.REGULAR:
        return [BranchData(None, 0, LEAF, {0: 1})]
    if kind is Kind.NON_DEGENERATE:
        kinds = (ISOLATED_STRONG, ISOLATED_STRONG)
    elif kind is Kind.SADDLE_NODE:
        kinds = (ISOLATED_STRONG, ISOLATED_WEAK)
    else:
        raise ValueError("the root is not reduced; branches live on the resolution")
    branches = [BranchData(None, 0, k, {0: 1}, formal=k == ISOLATED_WEAK) for k in kinds]
    # exact parametrizations only when a separatrix happens to be a coordinate axis
    t, zero = UPoly([0, 1]), UPoly()
    axes = {"y=0": (t, zero), "x=0": (zero, t)}
    free = list(branches)
    for branch, gamma in axes.items():
        if not is_invariant(root.germ, branch) or not free:
            continue
        direction = branch_direction(branch)
        match = next(
            (b for b in free if kind is Kind.NON_DEGENERATE
             or (b.kind == ISOLATED_WEAK) == (root.cls.weak_direction == direction)),
            None,
        )
        if match is not None:
            match.parametrization = gamma
            match.formal = False
            free.remove(match)
    return branches


def isolated_branches(tree: ResolutionTree, slope: int = 0) -> list[BranchData]:
    """One transverse separatrix per non-corner singular point of an invariant component."""
    if not tree.components:
        return _root_branches(tree)
    out: list[BranchData] = []
    for pt in tree.final_points():
        if not pt.cls.is_singular or pt.is_corner or not pt.V:
            continue
        cid = pt.V[0]
        if tree.components[cid].dicritical:
            raise AssertionError("singular point on a dicritical component")
        if pt.cls.kind is Kind.SADDLE_NODE and pt.tangent_component != cid:
            kind = ISOLATED_WEAK
        else:
            kind = ISOLATED_STRONG
        if pt.is_conjugate:
            # same multiplicities as any curvetta through a free point of cid
            m, _ = free_curvetta(tree, cid, _free_coordinates(tree, cid, 1, 0)[0], slope)
            for i in range(pt.count):
                out.append(
                    BranchData(cid, pt.id, kind, dict(m), None, None, kind == ISOLATED_WEAK, i)
                )
        else:
            m, gamma = attach_curvetta(tree, pt.id, cid, slope)
            out.append(
                BranchData(cid, pt.id, kind, m, gamma, pt.coords, kind == ISOLATED_WEAK)
            )
    return out


def dicritical_attachments(tree: ResolutionTree, offset: int = 0, slope: int = 0) -> list[tuple[BranchData, int]]:
    """Primitive choice of dicritical separatrices: |2 - Val(D)| curvettas per D."""
    out: list[tuple[BranchData, int]] = []
    for comp in tree.components:
        if not comp.dicritical:
            continue
        n = 2 - tree.val(comp.id)
        if n == 0:
            continue
        sign = 1 if n > 0 else -1
        for b in _free_coordinates(tree, comp.id, abs(n), offset):
            m, gamma = free_curvetta(tree, comp.id, b, slope)
            out.append(
                (BranchData(comp.id, None, DICRITICAL_CURVETTA, m, gamma, (Fraction(0), b)), sign)
            )
    return out


def balanced_divisor(tree: ResolutionTree, offset: int = 0, slope: int = 0) -> SeparatrixDivisor:
    entries = [(b, 1) for b in isolated_branches(tree, slope)]
    entries.extend(dicritical_attachments(tree, offset, slope))
    divisor = SeparatrixDivisor(entries)
    if not divisor.is_balanced(tree):
        raise AssertionError("balance identity failed")
    return divisor


# ---------------------------------------------------------------------------
# Intersection numbers
# ---------------------------------------------------------------------------


def local_intersection(f: Poly, g: Poly) -> int:
    """Intersection multiplicity at the origin of {f=0} and {g=0} (Fulton's algorithm)."""
    total = 0
    F, G = f, g
    while True:
        if F.is_zero or G.is_zero:
            raise InfiniteIntersectionError("curves share a component")
        if F.constant_term() or G.constant_term():
            return total
        fx = restriction(F, "y=0")
        gx = restriction(G, "y=0")
        if fx.is_zero and gx.is_zero:
            raise InfiniteIntersectionError("curves share the component {y=0}")
        if gx.is_zero:
            F, G, fx, gx = G, F, gx, fx
        if fx.is_zero:
            # F = y * H: I(F, G) = ord_x G(x, 0) + I(H, G)
            total += gx.ord()
            F = F.shift_down((0, 1))
            continue
        if fx.degree > gx.degree:
            F, G, fx, gx = G, F, gx, fx
        shift = gx.degree - fx.degree
        G = G * fx.lc() - F * Poly.monomial((shift, 0), gx.lc())


def intersection_number(a: BranchData | Poly, b: Poly) -> int:
    """Intersection number at the root point; a branch needs its parametrization."""
    if isinstance(a, BranchData):
        if a.parametrization is None:
            raise ValueError("branch carries no parametrization")
        value = eval_on_param(b, a.parametrization)
        if value.is_zero:
            raise InfiniteIntersectionError("the curve contains the branch")
        return value.ord()
    return local_intersection(a, b)


def divisor_intersection(divisor: SeparatrixDivisor, curve: Poly) -> int:
    return sum(a * intersection_number(b, curve) for b, a in divisor.entries)
