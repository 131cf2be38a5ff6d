import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inertia_lab.errors import BadRange, InvariantViolation, NotCoprime, ParseError, Unsupported
from inertia_lab.inertia import (
    InertiaShape,
    TargetStatus,
    alt_fp_parts,
    alternating_obligation,
    canonicalize,
    embed_shape,
    enumerate_ic_targets,
    fibre_profile,
    kummer_pullback,
    realize,
    shape_key,
    symmetric_obligation,
)
from inertia_lab.perm import GroupClass, Perm, make_theta


def test_targets_for_a6_at_5():
    targets = enumerate_ic_targets(6, 5)
    assert len(targets.entries) == 2
    by_exp = {e.shape.theta_exp: e for e in targets.entries}
    assert by_exp[2].status is TargetStatus.MUST_REALIZE
    assert by_exp[0].status is TargetStatus.REDUCIBLE
    assert by_exp[0].kummer_exponent == 2
    assert shape_key(by_exp[0].reduced_from) == shape_key(by_exp[2].shape)


@pytest.mark.parametrize("d, p", [(8, 5), (9, 5), (10, 7), (13, 7), (14, 11)])
def test_targets_have_the_requested_parity(d, p):
    for kind, even in ((GroupClass.ALTERNATING, True), (GroupClass.SYMMETRIC, False)):
        targets = enumerate_ic_targets(d, p, kind)
        assert targets.entries
        assert all(e.shape.generator.is_even() == even for e in targets.entries)
        keys = [shape_key(e.shape) for e in targets.entries]
        assert len(keys) == len(set(keys))


def test_symmetric_targets_at_degree_p():
    targets = enumerate_ic_targets(11, 11, GroupClass.SYMMETRIC)
    # odd divisors of 10 give odd theta powers
    assert sorted(e.shape.theta_exp for e in targets.entries) == [1, 5]


def test_reducible_entries_come_from_listed_shapes():
    targets = enumerate_ic_targets(10, 7)
    listed = {shape_key(s) for s in targets.shapes()}
    for entry in targets.entries:
        if entry.status is TargetStatus.REDUCIBLE:
            assert shape_key(entry.reduced_from) in listed
            result = kummer_pullback(1, entry.reduced_from, entry.kummer_exponent, GroupClass.ALTERNATING)
            assert shape_key(result.shape) == shape_key(entry.shape)


def test_deferred_entries_need_lower_degree_ic():
    plain = enumerate_ic_targets(11, 7)
    with_lower = enumerate_ic_targets(11, 7, lower_ic=range(7, 11))
    assert not any(e.status is TargetStatus.DEFERRED for e in plain.entries)
    deferred = [e for e in with_lower.entries if e.status is TargetStatus.DEFERRED]
    for entry in deferred:
        assert len(entry.shape.fixed_points()) >= 2
        assert entry.deferred_to == 11 - len(entry.shape.fixed_points()) + 1
    # theta * (8 9) fixes 10 and 11 and is no Kummer image of another shape
    key = shape_key(InertiaShape.wild(7, 11, 1, Perm.from_cycles([(8, 9)], 11)))
    assert [e.deferred_to for e in deferred if shape_key(e.shape) == key] == [10]


@pytest.mark.parametrize("d", [4, 10, 12])
def test_targets_reject_degrees_outside_range(d):
    with pytest.raises(BadRange):
        enumerate_ic_targets(d, 5)


def test_targets_reject_composite_p():
    with pytest.raises(InvariantViolation):
        enumerate_ic_targets(9, 9)


def test_targets_to_dataframe(tmp_path):
    targets = enumerate_ic_targets(8, 5)
    frame = targets.to_dataframe()
    assert list(frame["status"]) == [e.status.value for e in targets.entries]
    path = targets.save_to_csv(directory=str(tmp_path))
    assert path.endswith("targets_Alternating_d8_p5.csv")


def test_shape_invariants():
    with pytest.raises(InvariantViolation):
        InertiaShape.wild(5, 8, 1, Perm.from_cycles([(4, 6)], 8))
    with pytest.raises(InvariantViolation):
        InertiaShape.wild(7, 5)
    with pytest.raises(InvariantViolation):
        InertiaShape.tame(5, 5, Perm.from_cycles([range(1, 6)], 5))


def test_theta_exponent_is_reduced():
    assert InertiaShape.wild(7, 7, 6).theta_exp == 0
    assert InertiaShape.wild(7, 7, 8).theta_exp == 2


@pytest.mark.parametrize(
    "text",
    ["wild p=5 d=8 i=2 omega=(6 7 8)", "wild p=7 d=7 i=3 omega=()", "tame p=5 d=5 gamma=(1 2)(3 4)"],
)
def test_shape_text_round_trip(text):
    shape = InertiaShape.parse(text)
    assert str(shape) == text
    assert InertiaShape.parse(str(shape)) == shape


def test_shape_parse_with_defaults():
    shape = InertiaShape.parse("wild i=2 omega=(6 7)", p=5, d=7)
    assert shape.p == 5 and shape.d == 7 and shape.omega.cycle_type() == (2, 1, 1, 1, 1, 1)


@pytest.mark.parametrize("text", ["", "weird p=5", "wild p=5", "tame p=5 d=5", "wild p=5 d=6 omega=(1 2)"])
def test_shape_parse_rejects(text):
    with pytest.raises(ParseError):
        InertiaShape.parse(text)


@pytest.mark.parametrize("p, d", [(5, 6), (5, 8), (7, 9), (11, 13)])
def test_realized_orders_match_formula(p, d):
    for entry in enumerate_ic_targets(d, p).entries:
        assert realize(entry.shape).order() == entry.shape.expected_order


def test_canonical_form():
    shape = InertiaShape.wild(7, 9, 5, Perm.from_cycles([(8, 9)], 9))
    canonical = canonicalize(shape)
    assert canonical.theta_exp == 1
    assert realize(canonical).same_group(realize(shape))
    assert shape_key(canonical) == shape_key(shape)


def test_fibre_profile_and_embedding():
    shape = InertiaShape.wild(5, 6, 2)
    assert fibre_profile(shape).indices == (5, 1)
    assert fibre_profile(shape, 8).indices == (5, 1, 1, 1)
    assert embed_shape(shape, 8).d == 8
    with pytest.raises(BadRange):
        embed_shape(shape, 5)


def test_alt_fp_parts():
    shape = InertiaShape.wild(5, 7, 2)
    parts = alt_fp_parts(shape, 7)
    assert len(parts) == 2
    for G, inertia in parts:
        assert G.order() == math.factorial(6) // 2
        assert inertia.is_subgroup_of(G)


@pytest.mark.parametrize("p, d", [(5, 5), (5, 7), (7, 10), (11, 12)])
def test_tau_normally_generates_alternating_group(p, d):
    assert alternating_obligation(p, d)


@pytest.mark.parametrize("d", [3, 5, 8])
def test_symmetric_group_has_no_odd_quotient(d):
    assert symmetric_obligation(d)


def test_kummer_on_a_p_plus_one_shape():
    shape = InertiaShape.wild(5, 6, 2)
    result = kummer_pullback(6, shape, 2, GroupClass.ALTERNATING)
    assert result.over0_order == 3
    assert result.shape.theta_exp == 0
    assert result.group is GroupClass.ALTERNATING
    assert result.obligation_holds


def test_kummer_with_a_permutation_over_zero():
    over0 = Perm.from_cycles([(1, 2, 3, 4, 5, 6)], 6)
    result = kummer_pullback(over0, InertiaShape.wild(5, 6, 1), 3, GroupClass.SYMMETRIC)
    assert result.over0.cycle_type() == (2, 2, 2)
    assert result.group is GroupClass.SYMMETRIC


def test_kummer_even_exponent_turns_symmetric_into_alternating():
    shape = InertiaShape.wild(7, 7, 1)
    result = kummer_pullback(1, shape, 2, GroupClass.SYMMETRIC)
    assert result.group is GroupClass.ALTERNATING
    assert result.shape.theta_exp == 2


def test_kummer_rejects_unsupported_transition():
    shape = InertiaShape.wild(7, 7, 1)
    with pytest.raises(Unsupported):
        kummer_pullback(4, shape, 2, GroupClass.SYMMETRIC)


def test_kummer_rejects_multiples_of_p():
    with pytest.raises(NotCoprime):
        kummer_pullback(1, InertiaShape.wild(5, 6, 2), 10, GroupClass.ALTERNATING)


@st.composite
def kummer_inputs(draw):
    p = draw(st.sampled_from([5, 7]))
    d = draw(st.integers(p, p + 3))
    entry = draw(st.sampled_from(enumerate_ic_targets(d, p).entries))
    coprime = st.integers(1, 30).filter(lambda n: n % p)
    return entry.shape, draw(st.integers(1, 40)), draw(coprime), draw(coprime)


@given(kummer_inputs())
@settings(max_examples=40, deadline=None)
def test_kummer_pullbacks_compose(data):
    shape, over0, a, b = data
    first = kummer_pullback(over0, shape, a, GroupClass.ALTERNATING)
    second = kummer_pullback(first.over0, first.shape, b, GroupClass.ALTERNATING)
    direct = kummer_pullback(over0, shape, a * b, GroupClass.ALTERNATING)
    assert second.over0_order == direct.over0_order
    assert shape_key(second.shape) == shape_key(direct.shape)


def test_theta_generator_of_wild_shape():
    shape = InertiaShape.wild(5, 8, 2, Perm.from_cycles([(6, 7, 8)], 8))
    assert shape.generator == make_theta(5, 8) ** 2 * shape.omega
    assert shape.tame_order == 6
    assert shape.expected_order == 30


def test_kummer_odd_exponent_keeps_symmetric():
    result = kummer_pullback(1, InertiaShape.wild(7, 7, 1), 3, GroupClass.SYMMETRIC)
    assert result.group is GroupClass.SYMMETRIC
    assert result.obligation == "S_7 has no nontrivial quotient of odd order"
    assert result.obligation_holds
