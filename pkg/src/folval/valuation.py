"""Orders of vanishing along exceptional components and the tangency excess.

Everything here is a recursion over birth points of components, plus one
deliberately naive oracle (:func:`nu_F_direct`) that pulls the form back
through the whole chart chain and reads the order off the result.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly
from .divisors import SeparatrixDivisor, balanced_divisor
from .foliation import algebraic_multiplicity
from .resolution import ResolutionTree, rho_relative, tangent_saddle_nodes


def nu_F_along(tree: ResolutionTree, cid: int, memo: dict[int, int] | None = None) -> int:
    """Order of the pulled-back form along a component, by recursion over birth points."""
    if memo is None:
        memo = {}
    if cid not in memo:
        comp = tree.components[cid]
        birth = tree.points[comp.birth_point]
        below = sum(nu_F_along(tree, e, memo) for e in birth.V)
        memo[cid] = algebraic_multiplicity(birth.germ) + below + comp.epsilon
    return memo[cid]


def _mul_trunc(a: dict, b: dict, n: int) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            i = i1 + i2
            if i < n:
                key = (i, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def _substitute_trunc(p: Poly, X: dict, Y: dict, n: int) -> dict:
    """p(X, Y) modulo x^n, with X, Y given as term dicts."""
    xp = [{(0, 0): 1}]
    yp = [{(0, 0): 1}]
    out: dict = {}
    for (i, j), c in p.items():
        while len(xp) <= i:
            xp.append(_mul_trunc(xp[-1], X, n))
        while len(yp) <= j:
            yp.append(_mul_trunc(yp[-1], Y, n))
        out = _add(out, _mul_trunc(xp[i], yp[j], n), c)
    return out


def nu_F_direct(tree: ResolutionTree, cid: int) -> int:
    """Same quantity, computed by substitution with no division anywhere.

    The pullback is computed exactly modulo x^n, n doubling until one of the
    two coefficients survives the truncation.
    """
    X, Y = tree.component_map(cid)
    Xd, Yd = X.terms, Y.terms
    partials = [(X.diff(0).terms, Y.diff(0).terms), (X.diff(1).terms, Y.diff(1).terms)]
    n = 8
    while True:
        P = _substitute_trunc(tree.root.P, Xd, Yd, n)
        Q = _substitute_trunc(tree.root.Q, Xd, Yd, n)
        orders = []
        for ax, ay in partials:
            coeff = _add(_mul_trunc(P, ax, n), _mul_trunc(Q, ay, n))
            if coeff:
                orders.append(min(i for i, _ in coeff))
        if orders:
            return min(orders)
        n *= 2


def nu_scalar_direct(tree: ResolutionTree, cid: int, f: Poly) -> int:
    """Order of vanishing of the pullback of ``f`` along a component."""
    X, Y = tree.component_map(cid)
    return f.substitute([X, Y]).order_in(0)


def xi_at_point(tree: ResolutionTree, q: int) -> int:
    """Tangency excess of the germ at ``q`` (0 when ``q`` is never blown up)."""
    if not tree.points[q].blown_up:
        return 0
    total = 0
    for sn in tangent_saddle_nodes(tree):
        if tree.is_descendant(sn.point, q) and tree.is_above(q, sn.component):
            total += rho_relative(tree, q, sn.component) * (sn.weak_index - 1) * sn.count
    return total


def xi_along(tree: ResolutionTree, cid: int, memo: dict[int, int] | None = None) -> int:
    if memo is None:
        memo = {}
    if cid not in memo:
        birth = tree.points[tree.components[cid].birth_point]
        memo[cid] = xi_at_point(tree, birth.id) + sum(xi_along(tree, e, memo) for e in birth.V)
    return memo[cid]


def nu_divisor_along(
    tree: ResolutionTree, cid: int, divisor: SeparatrixDivisor, memo: dict[int, int] | None = None
) -> int:
    if memo is None:
        memo = {}
    if cid not in memo:
        birth = tree.points[tree.components[cid].birth_point]
        memo[cid] = divisor.multiplicity_at(birth.id) + sum(
            nu_divisor_along(tree, e, divisor, memo) for e in birth.V
        )
    return memo[cid]


@dataclass
class ComponentRecord:
    id: int
    stage: int
    dicritical: bool
    rho: int
    val: int
    epsilon: int
    nu_F: int
    nu_F_direct: int
    nu_Psi: int
    xi: int

    @property
    def theorem_ok(self) -> bool:
        return self.nu_Psi == self.nu_F + 1 - self.epsilon - self.xi

    @property
    def corollary_ok(self) -> bool:
        return self.nu_Psi - 1 + self.epsilon <= self.nu_F

    @property
    def oracle_ok(self) -> bool:
        return self.nu_F == self.nu_F_direct

    def identity(self) -> str:
        """The checked identity written out with its numbers, e.g. ``3 = 6 + 1 - 4``."""
        rhs = f"{self.nu_F}" if self.dicritical else f"{self.nu_F} + 1"
        return f"{self.nu_Psi} = {rhs} - {self.xi}"

    def invariants(self) -> tuple:
        """Label-free data used to compare trees built in different orders."""
        return (self.stage, self.dicritical, self.rho, self.val, self.nu_F, self.xi, self.nu_Psi)


@dataclass
class ValuationReport:
    components: list[ComponentRecord] = field(default_factory=list)
    nu_p: int = 0
    nu_B: int = 0
    xi_p: int = 0
    tangent_saddle_nodes: int = 0

    @property
    def prop34_ok(self) -> bool:
        return self.nu_p == self.nu_B - 1 + self.xi_p

    @property
    def second_type(self) -> bool:
        return self.xi_p == 0

    @property
    def ok(self) -> bool:
        return self.prop34_ok and all(
            c.theorem_ok and c.corollary_ok and c.oracle_ok for c in self.components
        )

    def violations(self) -> list[str]:
        out = []
        for c in self.components:
            if not c.oracle_ok:
                out.append(f"D{c.id + 1}: recursion gives nu_F={c.nu_F}, substitution gives {c.nu_F_direct}")
            if not c.theorem_ok:
                out.append(f"D{c.id + 1}: identity fails: {c.identity()}")
            if not c.corollary_ok:
                out.append(f"D{c.id + 1}: inequality fails")
        if not self.prop34_ok:
            out.append(f"root: {self.nu_p} != {self.nu_B} - 1 + {self.xi_p}")
        return out


def verify(tree: ResolutionTree, divisor: SeparatrixDivisor | None = None, offset: int = 0) -> ValuationReport:
    if divisor is None:
        divisor = balanced_divisor(tree, offset)
    nu_memo: dict[int, int] = {}
    xi_memo: dict[int, int] = {}
    psi_memo: dict[int, int] = {}
    records = [
        ComponentRecord(
            id=comp.id,
            stage=comp.stage,
            dicritical=comp.dicritical,
            rho=comp.rho,
            val=tree.val(comp.id),
            epsilon=comp.epsilon,
            nu_F=nu_F_along(tree, comp.id, nu_memo),
            nu_F_direct=nu_F_direct(tree, comp.id),
            nu_Psi=nu_divisor_along(tree, comp.id, divisor, psi_memo),
            xi=xi_along(tree, comp.id, xi_memo),
        )
        for comp in tree.components
    ]
    return ValuationReport(
        components=records,
        nu_p=algebraic_multiplicity(tree.root),
        nu_B=divisor.nu_p(),
        xi_p=xi_at_point(tree, 0),
        tangent_saddle_nodes=len(tangent_saddle_nodes(tree)),
    )
