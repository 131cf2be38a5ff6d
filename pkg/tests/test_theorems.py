import json

import pytest

from inertia_lab.certificate import StepKind, StepStatus, emit_certificate
from inertia_lab.cover import known_witness
from inertia_lab.errors import ParseError, ScopeExceeded, SideConditionViolated
from inertia_lab.inertia import TargetStatus, enumerate_ic_targets
from inertia_lab.perm import GroupClass
from inertia_lab.theorems import (
    check_gpwic,
    replay,
    verify_corollary,
    verify_ic_theorem,
    verify_sym_theorem,
)

# A_p+4 and A_p+5 leave theta^i (2,2)-type shapes open when 4 | p-1.
IC_DECIDED = [(theorem, p) for theorem in ("A_p+1", "A_p+3") for p in (5, 11, 17, 23)] + [
    ("A_p+4", 11),
    ("A_p+4", 23),
]
IC_OPEN = [("A_p+4", 5), ("A_p+4", 17), ("A_p+5", 17), ("A_p+5", 29)]
IC_MATRIX = IC_DECIDED + IC_OPEN
SYM_MATRIX = [(theorem, p) for theorem in ("S_p", "S_p+1") for p in (5, 11, 17, 23)] + [
    (theorem, p) for theorem in ("S_p+2", "S_p+3") for p in (11, 23)
]
OFFSETS = {"A_p+1": 1, "A_p+3": 3, "A_p+4": 4, "A_p+5": 5, "S_p": 0, "S_p+1": 1, "S_p+2": 2, "S_p+3": 3}


def target_shapes(theorem, p):
    d = p + OFFSETS[theorem]
    if theorem.startswith("A"):
        targets = enumerate_ic_targets(d, p, GroupClass.ALTERNATING, lower_ic=tuple(range(p, d)))
    else:
        targets = enumerate_ic_targets(d, p, GroupClass.SYMMETRIC)
    return targets


@pytest.mark.parametrize("theorem, p", IC_DECIDED)
def test_ic_matrix_passes(theorem, p):
    cert = verify_ic_theorem(theorem, p)
    assert cert.passed, cert.to_text()
    assert cert.theorem == theorem and cert.p == p
    assert "reduction-unmechanized" not in cert.axioms()


@pytest.mark.parametrize("theorem, p", IC_OPEN)
def test_open_shapes_leave_the_theorem_undecided(theorem, p):
    cert = verify_ic_theorem(theorem, p)
    assert cert.overall is StepStatus.UNDECIDED, cert.to_text()
    assert not cert.passed
    assert cert.first_failure is None
    assert cert.open_targets()
    payload = json.loads(emit_certificate(cert))
    assert payload["overall"] == "undecided"
    assert payload["open_targets"] == sorted(cert.open_targets())


def test_a_p_plus_four_at_17_leaves_the_double_transpositions_open():
    cert = verify_ic_theorem("A_p+4", 17)
    expected = {f"wild p=17 d=21 i={i} omega=(18 19)(20 21)" for i in (0, 4, 8)}
    assert expected <= cert.open_targets()
    assert not expected & cert.discharged()
    assert all(f"open: {shape}" in cert.to_text() for shape in expected)


@pytest.mark.parametrize("theorem, p", IC_OPEN)
def test_no_abhyankar_step_starts_from_an_open_shape(theorem, p):
    cert = verify_ic_theorem(theorem, p)
    sources = {s.inputs["source"] for s in cert.steps if s.kind is StepKind.ABHYANKAR_STEP and "source" in s.inputs}
    assert sources.isdisjoint(cert.open_targets())


@pytest.mark.parametrize("theorem, p", SYM_MATRIX)
def test_sym_matrix_passes(theorem, p):
    cert = verify_sym_theorem(theorem, p)
    assert cert.passed, cert.to_text()


@pytest.mark.parametrize("theorem, p", IC_MATRIX + SYM_MATRIX)
def test_every_target_is_discharged(theorem, p):
    verify = verify_ic_theorem if theorem.startswith("A") else verify_sym_theorem
    cert = verify(theorem, p)
    targets = target_shapes(theorem, p)
    must = {str(e.shape) for e in targets.entries if e.status is TargetStatus.MUST_REALIZE}
    assert must <= cert.discharged() | cert.open_targets()
    assert cert.discharged().isdisjoint(cert.open_targets())
    # nothing outside the target list is accounted for
    assert cert.discharged() | cert.open_targets() == {str(e.shape) for e in targets.entries}


def test_a_p_plus_one_chain_at_5():
    cert = verify_ic_theorem("A_p+1", 5)
    kinds = [s.kind for s in cert.steps]
    assert kinds[:4] == [
        StepKind.GROUP_COMPUTATION,
        StepKind.ASSUMPTION_CHECK,
        StepKind.COVER_REPORT,
        StepKind.GALOIS_VERDICT,
    ]
    kummer = [s for s in cert.steps if s.kind is StepKind.KUMMER_STEP]
    assert [s.inputs["n"] for s in kummer] == [6]
    assert kummer[0].inputs["over0_order"] == 1
    assert "abhyankar-lemma" in cert.axioms()


def test_a_p_plus_five_needs_four_not_dividing_p_plus_one():
    with pytest.raises(SideConditionViolated) as info:
        verify_ic_theorem("A_p+5", 23)
    assert info.value.theorem == "A_p+5"
    assert info.value.p == 23
    assert "4 does not divide p+1" in info.value.reason


@pytest.mark.parametrize(
    "theorem, p",
    [("A_p+1", 7), ("A_p+3", 13), ("A_p+5", 11), ("A_p+1", 4), ("A_p+1", 3)],
)
def test_ic_side_conditions(theorem, p):
    with pytest.raises(SideConditionViolated):
        verify_ic_theorem(theorem, p)


@pytest.mark.parametrize("theorem, p", [("S_p+1", 7), ("S_p+2", 17), ("S_p+3", 5), ("S_p", 9)])
def test_sym_side_conditions(theorem, p):
    with pytest.raises(SideConditionViolated):
        verify_sym_theorem(theorem, p)


@pytest.mark.parametrize("theorem", ["A_p", "A_p+2"])
def test_cited_degrees(theorem):
    cert = verify_ic_theorem(theorem, 5)
    assert cert.passed
    assert cert.axioms() == [{"A_p": "ic-alternating-p", "A_p+2": "ic-alternating-p+2"}[theorem]]


def mutations(spec):
    for k in range(len(spec.alpha)):
        alpha = list(spec.alpha)
        alpha[k] = alpha[k] + 1
        yield spec.with_points(alpha=alpha)
    for k in range(len(spec.beta)):
        beta = list(spec.beta)
        beta[k] = beta[k] + 1
        yield spec.with_points(beta=beta)


@pytest.mark.parametrize("index", range(4))
def test_mutated_witness_fails_the_assumption_check(index):
    spec = list(mutations(known_witness("A_p+1", 5)))[index]
    cert = verify_ic_theorem("A_p+1", 5, witnesses={"A_p+1": spec})
    check = next(s for s in cert.steps if s.kind is StepKind.ASSUMPTION_CHECK)
    assert check.status is StepStatus.FAIL
    assert not cert.passed
    assert not any(s.kind is StepKind.KUMMER_STEP for s in cert.steps)


def test_certificates_are_deterministic():
    first = emit_certificate(verify_ic_theorem("A_p+3", 11))
    second = emit_certificate(verify_ic_theorem("A_p+3", 11))
    assert first == second
    payload = json.loads(first)
    assert list(payload)[:2] == ["theorem", "p"]
    assert payload["overall"] == "pass"


def test_sym_theorem_keeps_one_odd_generator_over_zero():
    cert = verify_sym_theorem("S_p+2", 11)
    step = next(s for s in cert.steps if s.claim.startswith("every route keeps"))
    assert step.status is StepStatus.PASS
    assert len(step.inputs["cycle_types"]) == 1
    assert "patching-covers" in cert.axioms()


def test_s_p_uses_odd_divisors_only():
    cert = verify_sym_theorem("S_p", 5)
    kummer = [s.inputs["n"] for s in cert.steps if s.kind is StepKind.KUMMER_STEP]
    assert kummer == [1]


@pytest.mark.parametrize(
    "name, p, t",
    [("odd-t-21", 11, 3), ("even-t-12", 11, 6), ("even-t-12", 13, 4), ("odd-t-22", 11, 3), ("odd-t-22", 17, 5)],
)
def test_corollaries(name, p, t):
    cert = verify_corollary(name, p, t)
    assert cert.passed, cert.to_text()
    assert len(cert.discharged()) == 1


@pytest.mark.parametrize(
    "name, p, t",
    [("odd-t-21", 7, 3), ("odd-t-21", 11, 1), ("even-t-12", 11, 2), ("even-t-12", 11, 4)],
)
def test_corollary_side_condition(name, p, t):
    with pytest.raises(SideConditionViolated):
        verify_corollary(name, p, t)


@pytest.mark.parametrize("p, d", [(5, 6), (5, 7), (7, 8), (3, 4)])
def test_same_inertia(p, d):
    cert = verify_sym_theorem("S_d-same-inertia", p, d=d)
    assert cert.passed, cert.to_text()
    assert "embedding-normalized" in cert.axioms()


def test_same_inertia_needs_degree_prime_to_p():
    with pytest.raises(SideConditionViolated):
        verify_sym_theorem("S_d-same-inertia", 5, d=10)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_semidirect(p):
    cert = verify_sym_theorem("semidirect", p)
    assert cert.passed, cert.to_text()
    assert {"hkg-cover", "embedding-semidirect"} <= set(cert.axioms())


def test_small_alternating_gic():
    cert = check_gpwic("small-alternating-gic", 11)
    assert cert.theorem == "gpwic:small-alternating-gic"
    assert cert.passed, cert.to_text()
    assert check_gpwic("small-alternating-gic", 7).passed
    # relies on A_9 at p=5, which is undecided
    assert check_gpwic("small-alternating-gic", 5).overall is StepStatus.UNDECIDED


def test_gpwic_scope():
    with pytest.raises(ScopeExceeded):
        check_gpwic("weaker-inertia", 5, d=10)


def test_replay_dispatch():
    assert replay("A_p+1", 5).theorem == "A_p+1"
    assert replay("S_p", 5).theorem == "S_p"
    assert replay("odd-t-21", 11, t=3).theorem == "odd-t-21"
    assert replay("gpwic:p-group", 5).theorem == "gpwic:p-group"
    assert replay("strictly-divisible", 7).passed


@pytest.mark.parametrize("kwargs", [{"theorem_id": "A_p+9", "p": 5}, {"theorem_id": "odd-t-21", "p": 11}])
def test_replay_rejects(kwargs):
    with pytest.raises(ParseError):
        replay(**kwargs)
