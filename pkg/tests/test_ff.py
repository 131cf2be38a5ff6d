import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import symbols
from sympy.polys.subresultants_qq_zz import sylvester

from inertia_lab.errors import DivisionByZero, FieldMismatch, NotASquare, ParseError
from inertia_lab.ff import (
    BivariatePolynomial,
    FiniteField,
    Polynomial,
    is_unit_times_power_of_x,
    parse_element,
    polynomial_gcd,
    power_sums,
    resultant,
    resultant_y,
    smallest_non_residue,
    sqrt_in_field,
)

PRIMES = [5, 7, 11, 13]


def elements(field):
    return st.tuples(st.integers(0, field.p - 1), st.integers(0, field.p - 1 if field.degree == 2 else 0)).map(
        lambda ab: field(*ab)
    )


@st.composite
def field_and_elements(draw, count=2):
    field = FiniteField(draw(st.sampled_from(PRIMES)), draw(st.sampled_from([1, 2])))
    return field, [draw(elements(field)) for _ in range(count)]


@st.composite
def polynomials(draw, field, max_degree=6):
    coeffs = draw(st.lists(st.integers(0, field.p - 1), max_size=max_degree + 1))
    return Polynomial(field, coeffs)


@pytest.mark.parametrize("p, nu", [(5, 2), (7, 3), (11, 2), (13, 2), (23, 5)])
def test_smallest_non_residue(p, nu):
    assert smallest_non_residue(p) == nu
    assert FiniteField.quadratic(p).nu == nu


@given(field_and_elements(3))
@settings(max_examples=200)
def test_field_axioms(data):
    field, (a, b, c) = data
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == field.zero
    if a:
        assert a * a.inverse() == field.one
        assert (b / a) * a == b


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        FiniteField.prime(7).zero.inverse()


def test_from_fraction():
    F = FiniteField.prime(5)
    assert F.from_fraction(3, 4) == F(2)
    assert F.from_fraction(1, 4) == F(4)
    with pytest.raises(DivisionByZero):
        F.from_fraction(1, 5)


def test_mixing_fields():
    with pytest.raises(FieldMismatch):
        FiniteField.prime(5)(1) + FiniteField.prime(7)(1)
    with pytest.raises(FieldMismatch):
        FiniteField.quadratic(5).gen.lift(FiniteField.prime(5))


def test_lift_into_extension():
    F, K = FiniteField.prime(7), FiniteField.quadratic(7)
    assert F(3).lift(K) == K(3)
    assert K(3) == F(3).lift(K)


def test_frobenius_fixes_prime_field():
    K = FiniteField.quadratic(11)
    for z in K.elements():
        assert (z ** 11 == z) == z.in_prime_field()


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_in_prime_field(p):
    F = FiniteField.prime(p)
    squares = {x * x for x in F.elements()}
    for a in F.elements():
        if a in squares:
            r = sqrt_in_field(a)
            assert r * r == a
        else:
            with pytest.raises(NotASquare):
                sqrt_in_field(a)


@pytest.mark.parametrize("p", [5, 7])
def test_every_element_of_the_extension_is_handled(p):
    K = FiniteField.quadratic(p)
    squares = {x * x for x in K.elements()}
    for a in K.elements():
        if a in squares:
            r = sqrt_in_field(a)
            assert r * r == a
        else:
            with pytest.raises(NotASquare):
                sqrt_in_field(a)


@pytest.mark.parametrize("p", PRIMES)
def test_prime_field_elements_are_squares_in_extension(p):
    K = FiniteField.quadratic(p)
    for a in range(p):
        r = sqrt_in_field(K(a))
        assert r * r == K(a)


@pytest.mark.parametrize(
    "text, expected",
    [("3", (3, 0)), ("w", (0, 1)), ("2*w", (0, 2)), ("3+2*w", (3, 2)), ("1-w", (1, 6)), ("-1", (6, 0)), ("4w", (0, 4))],
)
def test_parse_element(text, expected):
    K = FiniteField.quadratic(7)
    assert parse_element(text, K) == K(*expected)


@pytest.mark.parametrize("text", ["", "x", "1+", "w2w"])
def test_parse_element_rejects(text):
    with pytest.raises(ParseError):
        parse_element(text, FiniteField.quadratic(7))


def test_w_needs_the_extension():
    with pytest.raises(ParseError):
        parse_element("w", FiniteField.prime(7))


@given(field_and_elements(1))
def test_element_text_round_trip(data):
    field, (a,) = data
    assert parse_element(str(a), field) == a


@given(st.data())
@settings(max_examples=100)
def test_division_with_remainder(data):
    field = FiniteField(data.draw(st.sampled_from(PRIMES)), data.draw(st.sampled_from([1, 2])))
    f = data.draw(polynomials(field))
    g = data.draw(polynomials(field, 4))
    if g.is_zero():
        with pytest.raises(DivisionByZero):
            divmod(f, g)
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_gcd_of_shared_factor():
    F = FiniteField.prime(7)
    y = Polynomial.variable(F)
    f = (y - 1) * (y - 2) ** 2
    g = (y - 2) * (y + 3)
    assert polynomial_gcd(f, g) == y - 2


def test_derivative_in_characteristic_p():
    F = FiniteField.prime(5)
    y = Polynomial.variable(F)
    assert (y ** 5 - y ** 2).derivative() == -2 * y


def test_interpolation_recovers_polynomial():
    F = FiniteField.prime(11)
    f = Polynomial(F, [3, 0, 5, 1])
    points = [(F(k), f(F(k))) for k in range(4)]
    assert Polynomial.interpolate(points) == f


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_resultant_matches_sympy(data):
    p = data.draw(st.sampled_from(PRIMES))
    F = FiniteField.prime(p)
    f = data.draw(polynomials(F, 5))
    g = data.draw(polynomials(F, 5))
    if f.degree < 1 or g.degree < 1:
        return
    y = symbols("y")
    fs = sum(c.a * y ** k for k, c in enumerate(f.coeffs))
    gs = sum(c.a * y ** k for k, c in enumerate(g.coeffs))
    assert resultant(f, g) == F(int(sylvester(fs, gs, y).det()) % p)


def test_resultant_vanishes_on_common_root():
    F = FiniteField.prime(13)
    y = Polynomial.variable(F)
    assert resultant((y - 4) * (y + 1), (y - 4) * (y - 5)) == F.zero
    assert resultant(y - 4, y - 5) != F.zero


@pytest.mark.parametrize("p, t", [(5, 2), (7, 2), (7, 3), (11, 4)])
def test_trinomial_discriminant_is_a_monomial(p, t):
    F = FiniteField.prime(p)
    y = Polynomial.variable(F)
    f = BivariatePolynomial([y ** p - y ** t, Polynomial(F, [-1])])
    R = resultant_y(f, f.derivative_y())
    assert is_unit_times_power_of_x(R)


def test_non_etale_cover_has_extra_discriminant_roots():
    F = FiniteField.prime(7)
    y = Polynomial.variable(F)
    f = BivariatePolynomial([y ** 3 - 3 * y, Polynomial(F, [-1])])
    R = resultant_y(f, f.derivative_y())
    assert not is_unit_times_power_of_x(R)


def test_resultant_y_agrees_with_common_root_count():
    F = FiniteField.prime(5)
    K = F.extension()
    y = Polynomial.variable(F)
    f = BivariatePolynomial([y ** 4 - y, Polynomial(F, [-1])])
    h = f.derivative_y()
    R = resultant_y(f, h)
    for a in K.elements():
        fa, ha = f.at_x(a), h.at_x(a)
        common = any(not fa(z) and not ha(z) for z in K.elements())
        if common:
            assert not R(a)


def test_power_sums():
    F = FiniteField.prime(7)
    points = [F(1), F(2), F(3)]
    sums = power_sums(points, [1, 1, 1], 2)
    assert sums == [F(3), F(6), F(14)]


def test_power_sums_detect_constant_g():
    F = FiniteField.prime(11)
    # alpha = (1, -n1/n2), beta = (0,), n = (p+t-1, 1), m = (t,): the two-point family
    p, t = 11, 3
    n = (p + t - 1, 1)
    points = [F(1), -F.from_fraction(n[0], n[1]), F(0)]
    sums = power_sums(points, [n[0], n[1], -t], 2)
    assert not sums[0] and not sums[1] and sums[2]


def test_elements_enumeration_order():
    K = FiniteField.quadratic(3)
    listed = list(K.elements())
    assert len(listed) == 9
    assert listed[:3] == [K(0), K(1), K(2)]
    assert len(set(itertools.chain(listed))) == 9
