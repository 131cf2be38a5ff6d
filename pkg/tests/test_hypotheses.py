from fractions import Fraction

import pytest

from inertia_lab.errors import InvariantViolation, NotASubgroup, ScopeExceeded
from inertia_lab.hypotheses import (
    GPWIC_INSTANCES,
    alternating_product_cycle_data,
    build_gpwic_certificate,
    check_patch_hypotheses,
    compute_h_series,
    kummer_index_pairs,
    riemann_hurwitz_genus,
)
from inertia_lab.inertia import InertiaShape, alt_fp_parts, realize
from inertia_lab.perm import Perm, PermGroup, make_tau


def test_h_series_of_symmetric_group_stops_at_alternating_group():
    series = compute_h_series(PermGroup.symmetric(6), [PermGroup(6, [make_tau(5, 6)])])
    assert series.orders() == [720, 360]
    assert series.length == 1
    assert not series.gic_holds
    assert series.normal_checked


def test_h_series_of_quasi_p_group_is_trivial():
    series = compute_h_series(PermGroup.alternating(6), [PermGroup(6, [make_tau(5, 6)])])
    assert series.length == 0
    assert series.gic_holds


def test_h_series_with_two_p_subgroups():
    a = Perm.from_cycles([(1, 2, 3)], 6)
    b = Perm.from_cycles([(4, 5, 6)], 6)
    G = PermGroup(6, [a, b, Perm.from_cycles([(1, 4), (2, 5), (3, 6)], 6)])
    series = compute_h_series(G, [PermGroup(6, [a])])
    assert series.orders()[0] == 18
    assert series.orders()[1] == 9
    assert series.gic_holds is False


def test_h_series_rejects_outside_subgroups():
    with pytest.raises(NotASubgroup):
        compute_h_series(PermGroup.alternating(4), [PermGroup(4, [Perm.from_cycles([(1, 2)], 4)])])


def test_patch_hypotheses_for_fixed_point_parts():
    shape = InertiaShape.wild(5, 7, 2)
    inertia = realize(shape)
    parts = alt_fp_parts(shape, 7)
    verdict = check_patch_hypotheses(PermGroup.alternating(7), parts, I=inertia, m=2, p=5)
    assert verdict.holds
    assert verdict.generated
    assert verdict.tame_orders == [2, 2]
    assert verdict.reasons == []


def test_patch_hypotheses_report_tame_order_mismatch():
    shape = InertiaShape.wild(5, 7, 2)
    verdict = check_patch_hypotheses(PermGroup.alternating(7), alt_fp_parts(shape, 7), m=3, p=5)
    assert not verdict.holds
    assert not verdict.tame_ok
    assert any("m=3" in reason for reason in verdict.reasons)


def test_patch_hypotheses_report_missing_generation():
    shape = InertiaShape.wild(5, 7, 2)
    parts = alt_fp_parts(shape, 7)[:1]
    verdict = check_patch_hypotheses(PermGroup.alternating(7), parts, p=5)
    assert not verdict.generated
    assert "the parts do not generate G" in verdict.reasons


def test_patch_hypotheses_shared_element():
    shape = InertiaShape.wild(5, 7, 2)
    parts = alt_fp_parts(shape, 7)
    inside = Perm.from_cycles([(1, 2), (3, 4)], 7)
    outside = Perm.from_cycles([(1, 6), (2, 7)], 7)
    assert check_patch_hypotheses(PermGroup.alternating(7), parts, p=5, shared=inside).shared_ok
    assert check_patch_hypotheses(PermGroup.alternating(7), parts, p=5, shared=outside).shared_ok is False


def test_patch_hypotheses_need_a_prime():
    with pytest.raises(InvariantViolation):
        check_patch_hypotheses(PermGroup.alternating(5), [], p=4)


def test_patch_hypotheses_check_containment():
    G = PermGroup.alternating(5)
    with pytest.raises(NotASubgroup):
        check_patch_hypotheses(G, [(PermGroup.symmetric(5), PermGroup(5))], p=5)


def test_alternating_product_cycle_data():
    G1, G2, tau, sigma = alternating_product_cycle_data(5)
    assert G1.order() == 60 * 60
    assert G2.order() == 60 * 60
    assert G1.contains(tau) and G2.contains(sigma)
    assert tau.cycle_type() == sigma.cycle_type() == (5, 5)
    verdict = check_patch_hypotheses(
        PermGroup.alternating(10), [(G1, PermGroup(10, [tau])), (G2, PermGroup(10, [sigma]))], p=5
    )
    assert verdict.holds
    assert verdict.tame_orders == [1, 1]


def test_riemann_hurwitz():
    assert riemann_hurwitz_genus(0, 6, [2, 3, 6]) == 1
    assert riemann_hurwitz_genus(0, 5, [5, 5]) == 0
    assert riemann_hurwitz_genus(1, 4, [4]) == Fraction(5, 2)


@pytest.mark.parametrize("n", [1, 2, 6, 12])
def test_two_point_cyclic_covers_are_totally_ramified(n):
    assert kummer_index_pairs(n) == [(n, n)]


@pytest.mark.parametrize("name", sorted(GPWIC_INSTANCES))
@pytest.mark.parametrize("p", [5, 7])
def test_gpwic_instances_pass(name, p):
    cert = build_gpwic_certificate(name, p)
    assert cert.theorem == f"gpwic:{name}"
    assert cert.passed, cert.to_text()
    assert cert.axioms()


def test_weaker_inertia_needs_sylow_of_order_p():
    with pytest.raises(ScopeExceeded):
        build_gpwic_certificate("weaker-inertia", 5, d=10)
