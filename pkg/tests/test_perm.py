import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import divisors, primitive_root
from sympy.combinatorics import Permutation, PermutationGroup

from inertia_lab.config import Settings
from inertia_lab.errors import (
    DegreeBudgetExceeded,
    DegreeMismatch,
    InvariantViolation,
    NotAPGroup,
    NotASubgroupOfProduct,
    NotASubset,
    ParseError,
)
from inertia_lab.perm import (
    Certainty,
    GroupClass,
    JonesVerdict,
    Parity,
    Perm,
    PermGroup,
    bsgs,
    classify_alt_sym,
    conjugating_element,
    direct_product,
    frattini_quotient,
    goursat_decompose,
    is_projective_prime,
    jones_criterion,
    make_tau,
    make_theta,
    normal_closure,
    p_part_subgroup,
)


def perms(degree):
    return st.permutations(range(1, degree + 1)).map(Perm)


@st.composite
def small_groups(draw):
    degree = draw(st.integers(2, 7))
    gens = draw(st.lists(perms(degree), min_size=1, max_size=3))
    return PermGroup(degree, gens)


def as_sympy(g):
    return Permutation([x - 1 for x in g.images])


def test_composition_applies_right_factor_first():
    a = Perm.from_cycles([(1, 2)], 3)
    b = Perm.from_cycles([(2, 3)], 3)
    # (a*b)(2) = a(b(2)) = a(3) = 3
    assert (a * b)(2) == 3
    assert (a * b)(3) == 1


@given(perms(6), perms(6))
def test_conjugate_is_c_a_c_inverse(a, c):
    assert a.conjugate(c) == c * a * ~c
    assert a.conjugate(c).cycle_type() == a.cycle_type()


@given(perms(7), st.integers(-20, 20))
def test_power_matches_repeated_product(a, k):
    expected = Perm.identity(7)
    step = a if k >= 0 else ~a
    for _ in range(abs(k)):
        expected = expected * step
    assert a ** k == expected


@given(perms(7))
def test_order_and_parity_agree_with_sympy(a):
    oracle = as_sympy(a)
    assert a.order() == oracle.order()
    assert a.is_even() == oracle.is_even


@pytest.mark.parametrize(
    "text, cycles",
    [("(1 2 3)(4 5)", [(1, 2, 3), (4, 5)]), ("()", []), ("(1,2)", [(1, 2)]), ("(5 1)", [(1, 5)])],
)
def test_parse(text, cycles):
    assert Perm.parse(text, 5) == Perm.from_cycles(cycles, 5)


@pytest.mark.parametrize("text", ["1 2", "(1 1)", "(1 9)", "(a b)", "(1 2"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        Perm.parse(text, 5)


def test_str_round_trip():
    g = Perm.from_cycles([(1, 4, 2), (3, 6)], 7)
    assert str(g) == "(1 4 2)(3 6)"
    assert Perm.parse(str(g), 7) == g
    assert str(Perm.identity(4)) == "()"


def test_images_must_form_a_permutation():
    with pytest.raises(InvariantViolation):
        Perm([1, 1, 2])


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Perm.identity(3) * Perm.identity(4)


def test_extend_and_restrict():
    g = Perm.from_cycles([(1, 2)], 2).extend(5)
    assert g.degree == 5
    assert g.fixed_points() == (3, 4, 5)
    h = Perm.direct_sum(Perm.from_cycles([(1, 2, 3)], 3), Perm.from_cycles([(1, 2)], 2))
    assert h.restrict(3, 5) == Perm.from_cycles([(1, 2)], 2)
    with pytest.raises(InvariantViolation):
        Perm.from_cycles([(3, 4)], 5).restrict(0, 3)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 23])
def test_theta_normalizes_tau(p):
    tau, theta = make_tau(p, p + 3), make_theta(p, p + 3)
    assert theta(1) == 1
    assert theta.order() == p - 1
    assert tau.conjugate(theta) == tau ** primitive_root(p)
    assert theta.parity() is Parity.ODD


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_theta_power_parity(p):
    theta = make_theta(p, p)
    for i in divisors(p - 1):
        assert (theta ** i).is_even() == (i % 2 == 0)


@given(perms(6), perms(6))
def test_conjugating_element(a, c):
    b = a.conjugate(c)
    x = conjugating_element(a, b)
    assert a.conjugate(x) == b


def test_conjugating_element_needs_equal_cycle_types():
    a = Perm.from_cycles([(1, 2, 3)], 4)
    b = Perm.from_cycles([(1, 2)], 4)
    assert conjugating_element(a, b) is None


@given(small_groups())
@settings(max_examples=60, deadline=None)
def test_order_matches_sympy(G):
    oracle = PermutationGroup([as_sympy(g) for g in G.generators] or [Permutation(G.degree - 1)])
    assert G.order() == oracle.order()


@given(small_groups())
@settings(max_examples=30, deadline=None)
def test_order_matches_naive_closure(G):
    if G.degree > 5:
        return
    assert G.order() == len(G.elements())


@given(small_groups(), st.data())
@settings(max_examples=40, deadline=None)
def test_membership_matches_sympy(G, data):
    oracle = PermutationGroup([as_sympy(g) for g in G.generators] or [Permutation(G.degree - 1)])
    g = data.draw(perms(G.degree))
    assert G.contains(g) == oracle.contains(as_sympy(g))


@pytest.mark.parametrize("d", [5, 8, 13, 28])
def test_full_groups_have_exact_orders(d):
    assert PermGroup.symmetric(d).order() == math.factorial(d)
    assert PermGroup.alternating(d).order() == math.factorial(d) // 2
    assert classify_alt_sym(PermGroup.symmetric(d)) is GroupClass.SYMMETRIC
    assert classify_alt_sym(PermGroup.alternating(d)) is GroupClass.ALTERNATING


def test_prebuilt_chains_agree_with_generated_ones():
    for d in (4, 6, 7):
        A = PermGroup.alternating(d)
        assert PermGroup(d, A.generators).order() == A.order()
        S = PermGroup.symmetric(d)
        assert PermGroup(d, S.generators).order() == S.order()


@pytest.mark.parametrize("n", range(3, 9))
def test_alternating_generators_generate_the_whole_group(n):
    A = PermGroup.alternating(n)
    assert all(g.is_even() for g in A.generators)
    assert PermGroup(n, A.generators).order() == math.factorial(n) // 2
    shifted = PermGroup.alternating_on(range(2, n + 2), n + 1)
    assert PermGroup(n + 1, shifted.generators).order() == math.factorial(n) // 2


def test_direct_product_with_small_alternating_factor():
    P = direct_product(PermGroup.symmetric(3), PermGroup.alternating(4))
    assert PermGroup(7, P.generators).order() == 72


def test_alternating_on_subset():
    A = PermGroup.alternating_on([3, 5, 6, 8], 9)
    assert A.order() == 12
    assert A.orbits() == [(1,), (2,), (3, 5, 6, 8), (4,), (7,), (9,)]


def test_generated_alternating_group():
    G = PermGroup(7, [Perm.from_cycles([(1, 2, 3)], 7), Perm.from_cycles([range(1, 8)], 7)])
    assert classify_alt_sym(G) is GroupClass.ALTERNATING


def test_classify_other():
    D4 = PermGroup(4, [Perm.from_cycles([(1, 2, 3, 4)], 4), Perm.from_cycles([(1, 3)], 4)])
    assert D4.order() == 8
    assert classify_alt_sym(D4) is GroupClass.OTHER


def test_primitivity():
    D4 = PermGroup(4, [Perm.from_cycles([(1, 2, 3, 4)], 4), Perm.from_cycles([(1, 3)], 4)])
    assert D4.is_transitive()
    assert not D4.is_primitive()
    assert PermGroup.alternating(6).is_primitive()
    C5 = PermGroup(5, [Perm.from_cycles([range(1, 6)], 5)])
    assert C5.is_primitive()


def test_degree_budget():
    tight = Settings(degree_budget=8)
    G = PermGroup(10, [Perm.from_cycles([range(1, 11)], 10)], tight)
    with pytest.raises(DegreeBudgetExceeded):
        G.order()


def test_bsgs():
    result = bsgs(PermGroup.symmetric(6))
    assert result.order == 720
    assert result.contains(Perm.from_cycles([(1, 6)], 6))


def test_random_elements_lie_in_group():
    G = PermGroup(8, [Perm.from_cycles([(1, 2, 3, 4, 5)], 8), Perm.from_cycles([(5, 6, 7)], 8)])
    rng = random.Random(7)
    for _ in range(20):
        assert G.contains(G.random_element(rng))


def test_pointwise_stabilizer():
    S = PermGroup.symmetric(5)
    assert S.pointwise_stabilizer([1, 2]).order() == 6


def test_normal_closure():
    S4 = PermGroup.symmetric(4)
    V = normal_closure(S4, [Perm.from_cycles([(1, 2), (3, 4)], 4)])
    assert V.order() == 4
    A4 = normal_closure(S4, [Perm.from_cycles([(1, 2, 3)], 4)])
    assert A4.order() == 12


def test_normal_closure_rejects_outside_seeds():
    with pytest.raises(NotASubset):
        normal_closure(PermGroup.alternating(4), [Perm.from_cycles([(1, 2)], 4)])


def test_direct_product():
    P = direct_product(PermGroup.symmetric(3), PermGroup.alternating(4))
    assert P.degree == 7
    assert P.order() == 6 * 12


def test_frattini_of_elementary_abelian_group():
    a = Perm.from_cycles([(1, 2, 3)], 6)
    b = Perm.from_cycles([(4, 5, 6)], 6)
    G = PermGroup(6, [a, b])
    result = frattini_quotient(G, 3, [PermGroup(6, [a]), PermGroup(6, [b])])
    assert result.order == 9
    assert result.rank == 2
    assert result.phi_order == 1
    assert result.image_ranks == (1, 1)
    assert result.direct_generation
    assert result.lemma_holds


def test_frattini_of_cyclic_group():
    G = PermGroup(9, [Perm.from_cycles([range(1, 10)], 9)])
    result = frattini_quotient(G, 3)
    assert result.rank == 1
    assert result.phi_order == 3


def test_frattini_needs_a_p_group():
    with pytest.raises(NotAPGroup):
        frattini_quotient(PermGroup.symmetric(3), 3)


def test_goursat_of_diagonal():
    S3 = PermGroup.symmetric(3)
    P = PermGroup(
        6,
        [Perm.from_cycles([(1, 2), (4, 5)], 6), Perm.from_cycles([(1, 2, 3), (4, 5, 6)], 6)],
    )
    result = goursat_decompose(S3, S3, P)
    assert result.pi1.order() == 6
    assert result.N1.order() == 1
    assert result.quotient_order == 6
    assert result.reconstruct().same_group(P)


def test_goursat_rejects_mixing_generators():
    S3 = PermGroup.symmetric(3)
    P = PermGroup(6, [Perm.from_cycles([(3, 4)], 6)])
    with pytest.raises(NotASubgroupOfProduct):
        goursat_decompose(S3, S3, P)


def test_p_part_of_symmetric_group():
    result = p_part_subgroup(PermGroup.symmetric(5), 5)
    assert result.subgroup.order() == 60
    assert result.certainty is Certainty.PROVED


@pytest.mark.parametrize("p, expected", [(5, True), (7, True), (13, True), (31, True), (11, False), (23, False)])
def test_projective_primes(p, expected):
    assert is_projective_prime(p) == expected


def test_jones_p_plus_two_clause():
    p = 7
    gamma = Perm.from_cycles([range(1, p + 2)], p + 2)
    result = jones_criterion(p + 2, p, gamma, 2)
    assert result.verdict is JonesVerdict.CONTAINS_ALT
    assert result.clause == "p-plus-two"


def test_jones_t_range_clause():
    p = 7
    gamma = make_theta(p, p + 3)
    result = jones_criterion(p + 3, p, gamma, 3)
    assert result.contains_alt


def test_jones_inconclusive_for_theta_power_at_degree_p():
    p = 11
    result = jones_criterion(p, p, make_theta(p, p), 0)
    assert result.verdict is JonesVerdict.INCONCLUSIVE


def test_jones_prime_degree_clause():
    p = 19
    gamma = Perm.from_cycles([range(1, 7), range(7, 13), range(13, 17), range(17, 20)], p)
    result = jones_criterion(p, p, gamma, 0)
    assert result.verdict is JonesVerdict.CONTAINS_ALT
    assert result.clause == "prime-degree"


@pytest.mark.parametrize(
    "p, lengths",
    [(11, (6, 3, 2)), (23, (6, 6, 4, 4, 3)), (13, (6, 4, 3))],
)
def test_jones_prime_degree_skips_mathieu_and_projective_degrees(p, lengths):
    cycles, start = [], 1
    for n in lengths:
        cycles.append(range(start, start + n))
        start += n
    gamma = Perm.from_cycles(cycles, p)
    assert jones_criterion(p, p, gamma, 0).verdict is JonesVerdict.INCONCLUSIVE

