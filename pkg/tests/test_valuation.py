from collections import Counter

import pytest

from corpus import CURVES, exact, omega_k, pencil
from folval.algebra import Poly
from folval.divisors import balanced_divisor
from folval.foliation import OneFormGerm, algebraic_multiplicity
from folval.resolution import reduce
from folval.valuation import nu_F_along, nu_F_direct, nu_scalar_direct, verify, xi_along, xi_at_point

x, y = Poly.var(0), Poly.var(1)
CUSP = OneFormGerm(-3 * x**2, 2 * y)
RADIAL = OneFormGerm(-y, x)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_omega_family(k):
    tree = reduce(omega_k(k))
    report = verify(tree)
    d1, d2 = report.components
    assert (d1.nu_F, d2.nu_F) == (k + 1, 2 * k)
    assert (d1.xi, d2.xi) == (k - 1, 2 * k - 2)
    assert (d1.nu_Psi, d2.nu_Psi) == (2, 3)
    assert report.ok and not report.second_type
    assert (report.nu_p, report.nu_B, report.xi_p) == (k, 2, k - 1)


def test_omega3_point_excess():
    tree = reduce(omega_k(3))
    assert xi_at_point(tree, 0) == 2
    q = tree.components[1].birth_point
    assert xi_at_point(tree, q) == 2
    leaf = next(p.id for p in tree.final_points())
    assert xi_at_point(tree, leaf) == 0


def test_omega3_identity_text():
    d1, d2 = verify(reduce(omega_k(3))).components
    assert d1.identity() == "2 = 4 - 2"
    assert d2.identity() == "3 = 6 + 1 - 4"


def test_radial_and_cusp():
    (d,) = verify(reduce(RADIAL)).components
    assert (d.dicritical, d.nu_F, d.nu_Psi, d.xi) == (True, 2, 2, 0)
    report = verify(reduce(CUSP))
    assert [c.nu_F for c in report.components] == [1, 2, 5]
    assert [c.nu_Psi for c in report.components] == [2, 3, 6]
    assert all(c.xi == 0 for c in report.components)
    assert report.second_type and report.ok


def test_reduced_root_has_only_root_summary():
    report = verify(reduce(OneFormGerm(y, x)))
    assert report.components == []
    assert (report.nu_p, report.nu_B, report.xi_p) == (1, 2, 0) and report.prop34_ok


def test_recursion_against_substitution_on_samples():
    for germ in (omega_k(4), CUSP, exact(y**3 - x**5), pencil(y**2, x**3)):
        tree = reduce(germ)
        for c in tree.components:
            assert nu_F_along(tree, c.id) == nu_F_direct(tree, c.id)


def test_balanced_equation_of_exact_forms_is_the_curve():
    for name, f in CURVES.items():
        tree = reduce(exact(f))
        report = verify(tree)
        assert report.ok, name
        for c in report.components:
            assert c.nu_Psi == nu_scalar_direct(tree, c.id, f), name


def test_identities_on_corpus(corpus_trees):
    assert len(corpus_trees) >= 100
    for name, tree in corpus_trees:
        report = verify(tree)
        assert report.violations() == [], name
        for c in report.components:
            assert c.nu_Psi >= 1, name
            assert c.xi >= 0, name
        assert report.second_type == (report.tangent_saddle_nodes == 0), name


def test_xi_grows_along_birth_chains(corpus_trees):
    for name, tree in corpus_trees:
        memo: dict[int, int] = {}
        for c in tree.components:
            birth = tree.points[c.birth_point]
            for e in birth.V:
                assert xi_along(tree, c.id, memo) >= xi_along(tree, e, memo), name


def test_multiplicity_lower_bound_for_non_dicritical_roots(corpus_trees):
    # an isolated-separatrix divisor cannot beat the germ's multiplicity by more than one
    for name, tree in corpus_trees:
        report = verify(tree)
        if all(not c.dicritical for c in report.components):
            assert report.nu_p >= report.nu_B - 1, name


def _profile(tree, offset=0):
    report = verify(tree, offset=offset)
    rows = Counter(c.invariants() for c in report.components)
    return rows, (report.nu_p, report.nu_B, report.xi_p)


@pytest.mark.parametrize("order", ["highest", 1, 2])
def test_choice_independence(corpus_trees, order):
    for name, tree in corpus_trees[:80]:
        base = _profile(tree)
        assert _profile(tree, offset=5) == base, name
        assert _profile(reduce(tree.root, order=order)) == base, name


def test_divisor_balance_feeds_root_multiplicity(corpus_trees):
    for name, tree in corpus_trees[:60]:
        divisor = balanced_divisor(tree)
        assert verify(tree, divisor).nu_B == divisor.nu_p() >= 1, name
        assert verify(tree).nu_p == algebraic_multiplicity(tree.root)
