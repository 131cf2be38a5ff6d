"""Exact arithmetic over F_p and F_{p^2} and dense polynomials over them.

Elements of F_{p^2} are written a + b*w with w^2 = nu, where nu is the
smallest quadratic non-residue mod p. Polynomials are dense ascending
coefficient tuples. The cover equations f(x, y) = A(y) - x*B(y) are linear in
x, so bivariate polynomials are stored as a short list of y-polynomials
indexed by the power of x.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime, sqrt_mod

from inertia_lab.errors import (
    DivisionByZero,
    FieldMismatch,
    InvariantViolation,
    NotASquare,
    ParseError,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def smallest_non_residue(p):
    """
    Returns the smallest positive quadratic non-residue mod p.

    Args:
        p (int): Odd prime.

    Returns:
        int: nu with nu^((p-1)/2) = -1 mod p.
    """
    for nu in range(2, p):
        if pow(nu, (p - 1) // 2, p) == p - 1:
            return nu
    raise InvariantViolation(f"no quadratic non-residue mod {p}")


class FiniteField:
    """
    The prime field F_p (degree 1) or its quadratic extension F_p(w), w^2 = nu.

    Attributes:
        p (int): Odd prime characteristic.
        degree (int): 1 or 2.
        nu (int | None): The non-residue defining w, for degree 2.
    """

    def __init__(self, p, degree=1):
        if not isinstance(p, int) or p < 3 or not isprime(p):
            raise InvariantViolation(f"characteristic must be an odd prime, got {p!r}")
        if degree not in (1, 2):
            raise InvariantViolation(f"field degree must be 1 or 2, got {degree!r}")
        self.p = p
        self.degree = degree
        self.nu = smallest_non_residue(p) if degree == 2 else None
        if self.nu is not None and pow(self.nu, (p - 1) // 2, p) != p - 1:
            raise InvariantViolation(f"{self.nu} is a square mod {p}")

    @classmethod
    def prime(cls, p):
        return _field(p, 1)

    @classmethod
    def quadratic(cls, p):
        return _field(p, 2)

    @property
    def name(self):
        return "Fp" if self.degree == 1 else "Fp2"

    @property
    def order(self):
        return self.p ** self.degree

    @property
    def zero(self):
        return FieldElement(self, 0, 0)

    @property
    def one(self):
        return FieldElement(self, 1, 0)

    @property
    def gen(self):
        """The element w of F_{p^2}."""
        if self.degree != 2:
            raise InvariantViolation("the prime field has no generator w")
        return FieldElement(self, 0, 1)

    def __call__(self, a, b=0):
        if isinstance(a, FieldElement):
            return a.lift(self)
        if b and self.degree == 1:
            raise FieldMismatch(f"{self} has no w-coordinate")
        return FieldElement(self, a % self.p, b % self.p)

    def from_fraction(self, numerator, denominator):
        """Returns numerator/denominator as a field element."""
        if denominator % self.p == 0:
            raise DivisionByZero(f"denominator {denominator} vanishes mod {self.p}")
        return self(numerator * pow(denominator, -1, self.p))

    def elements(self):
        """Yields every element, in the order a + b*w with b outermost."""
        for b in range(self.p if self.degree == 2 else 1):
            for a in range(self.p):
                yield FieldElement(self, a, b)

    def extension(self):
        return FiniteField.quadratic(self.p)

    def parse(self, text):
        return parse_element(text, self)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.degree) == (other.p, other.degree)

    def __hash__(self):
        return hash(("FiniteField", self.p, self.degree))

    def __repr__(self):
        return f"F_{self.order}"


@lru_cache(maxsize=None)
def _field(p, degree):
    return FiniteField(p, degree)


class FieldElement:
    """
    An element a + b*w of a FiniteField, with 0 <= a, b < p.

    Python ints are accepted as operands and reduced into the field. Mixing
    elements of different fields raises FieldMismatch; use lift() to move an
    F_p element into F_{p^2}.
    """

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b=0):
        self.field = field
        self.a = a
        self.b = b

    @property
    def coords(self):
        return (self.a,) if self.field.degree == 1 else (self.a, self.b)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, other % self.field.p, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, (self.a + other.a) % p, (self.b + other.b) % p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, (self.a - other.a) % p, (self.b - other.b) % p)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, -self.a % p, -self.b % p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, self.a * other.a % p, 0)
        a, b, c, d = self.a, self.b, other.a, other.b
        return FieldElement(self.field, (a * c + self.field.nu * b * d) % p, (a * d + b * c) % p)

    __rmul__ = __mul__

    def norm(self):
        """a^2 - nu*b^2, the norm down to F_p, as an int."""
        if self.field.degree == 1:
            return self.a * self.a % self.field.p
        return (self.a * self.a - self.field.nu * self.b * self.b) % self.field.p

    def inverse(self):
        if not self:
            raise DivisionByZero(f"zero has no inverse in {self.field}")
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, pow(self.a, -1, p), 0)
        n_inv = pow(self.norm(), -1, p)
        return FieldElement(self.field, self.a * n_inv % p, -self.b * n_inv % p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElement(self.field, other % self.field.p, 0)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.field.p, self.field.degree, self.a, self.b))

    def __lt__(self, other):
        return (self.b, self.a) < (other.b, other.a)

    def in_prime_field(self):
        return self.b == 0

    def lift(self, field):
        """Returns this element viewed in ``field`` (same characteristic)."""
        if field == self.field:
            return self
        if field.p != self.field.p:
            raise FieldMismatch(f"cannot move {self.field} into {field}")
        if field.degree < self.field.degree and self.b:
            raise FieldMismatch(f"{self} does not lie in {field}")
        return FieldElement(field, self.a, self.b)

    def is_square(self):
        try:
            sqrt_in_field(self)
        except NotASquare:
            return False
        return True

    def __str__(self):
        if self.field.degree == 1 or self.b == 0:
            return str(self.a)
        w_part = "w" if self.b == 1 else f"{self.b}*w"
        if self.a == 0:
            return w_part
        return f"{self.a}+{w_part}"

    def __repr__(self):
        return f"FieldElement({self}, {self.field!r})"


_ELEMENT_RE = re.compile(r"^([+-]?\d+)?(?:([+-])?(\d+)?\*?w)?$")


def parse_element(text, field):
    """
    Parses ``a``, ``w``, ``b*w`` or ``a+b*w`` (signs allowed) into ``field``.

    Raises:
        ParseError: If the text is not an element of the field.
    """
    compact = text.replace(" ", "")
    match = _ELEMENT_RE.match(compact)
    if not compact or not match:
        raise ParseError(f"not a field element: {text!r}")
    a_text, sign, b_text = match.groups()
    a = int(a_text) if a_text else 0
    if "w" not in compact:
        return field(a)
    if field.degree == 1:
        raise ParseError(f"{text!r} needs the quadratic extension")
    if a_text and sign is None and b_text is None:
        # "3w" reads as 3*w, not 3 + w
        a, b = 0, int(a_text)
    else:
        b = int(b_text) if b_text else 1
        if sign == "-":
            b = -b
    return field(a, b)


def sqrt_in_field(a):
    """
    Returns r with r*r == a, or raises NotASquare.

    In F_p the smaller of the two roots is returned. In F_{p^2} every element
    of F_p has a root; for a general element the norm equation is solved.

    Args:
        a (FieldElement): The element to take a root of.

    Returns:
        FieldElement: A square root of a in a's field.

    Raises:
        NotASquare: If a has no root in its field.
    """
    field = a.field
    p = field.p
    if not a:
        return field.zero
    if field.degree == 1:
        root = _sqrt_mod_p(a.a, p)
        if root is None:
            raise NotASquare(f"{a} is not a square in {field}")
        return field(root)
    if a.b == 0:
        root = _sqrt_mod_p(a.a, p)
        if root is not None:
            return field(root)
        # a/nu is a residue when a is not
        root = _sqrt_mod_p(a.a * pow(field.nu, -1, p) % p, p)
        return field(0, root)
    n = _sqrt_mod_p(a.norm(), p)
    if n is None:
        raise NotASquare(f"{a} is not a square in {field}")
    half = pow(2, -1, p)
    for candidate in ((a.a + n) * half % p, (a.a - n) * half % p):
        u = _sqrt_mod_p(candidate, p)
        if u:
            v = a.b * pow(2 * u, -1, p) % p
            root = field(u, v)
            if root * root == a:
                return root
    raise NotASquare(f"{a} is not a square in {field}")


def _sqrt_mod_p(value, p):
    value %= p
    if value == 0:
        return 0
    root = sqrt_mod(value, p)
    if root is None:
        return None
    return min(root, p - root)


class Polynomial:
    """
    A univariate polynomial over a FiniteField with ascending coefficients.

    Trailing zero coefficients are dropped, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        values = [c if isinstance(c, FieldElement) else field(c) for c in coeffs]
        for c in values:
            if c.field != field:
                raise FieldMismatch(f"coefficient {c} is not in {field}")
        while values and not values[-1]:
            values.pop()
        self.field = field
        self.coeffs = tuple(values)

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def monomial(cls, field, c, k):
        return cls(field, [0] * k + [c])

    @classmethod
    def variable(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def linear_power(cls, root, k):
        """(y - root)^k."""
        return cls(root.field, [-root, 1]) ** k

    @classmethod
    def interpolate(cls, points):
        """
        Lagrange interpolation through (x_i, y_i) pairs with distinct x_i.

        Args:
            points (list[tuple[FieldElement, FieldElement]]): Sample points.

        Returns:
            Polynomial: The unique polynomial of degree < len(points) through them.
        """
        field = points[0][0].field
        result = cls(field)
        for i, (xi, yi) in enumerate(points):
            basis = cls(field, [1])
            denom = field.one
            for j, (xj, _) in enumerate(points):
                if i != j:
                    basis = basis * cls(field, [-xj, 1])
                    denom = denom * (xi - xj)
            result = result + basis.scale(yi / denom)
        return result

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coefficient(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine polynomials over {self.field} and {other.field}")
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero
        return Polynomial(
            self.field,
            [
                (self.coeffs[k] if k < len(self.coeffs) else zero)
                + (other.coeffs[k] if k < len(other.coeffs) else zero)
                for k in range(n)
            ],
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field)
        product = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return Polynomial(self.field, product)

    __rmul__ = __mul__

    def scale(self, c):
        return Polynomial(self.field, [c * a for a in self.coeffs])

    def __pow__(self, k):
        result = Polynomial(self.field, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        remainder = list(self.coeffs)
        quotient = [self.field.zero] * max(len(remainder) - other.degree, 0)
        inv_lc = other.lc().inverse()
        for k in range(len(remainder) - 1, other.degree - 1, -1):
            c = remainder[k]
            if not c:
                continue
            q = c * inv_lc
            shift = k - other.degree
            quotient[shift] = q
            for j, b in enumerate(other.coeffs):
                remainder[shift + j] = remainder[shift + j] - q * b
        return Polynomial(self.field, quotient), Polynomial(self.field, remainder[: max(other.degree, 0)])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluates by Horner's rule; x may be an element of an extension field."""
        if isinstance(x, int):
            x = self.field(x)
        result = x.field.zero
        for c in reversed(self.coeffs):
            result = result * x + c.lift(x.field)
        return result

    def derivative(self):
        return Polynomial(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.lc().inverse())

    def lift(self, field):
        return Polynomial(field, [c.lift(field) for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Polynomial(self.field, [other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        return format_polynomial(self, "y")

    def __repr__(self):
        return f"Polynomial({self}, {self.field!r})"


def format_polynomial(f, variable):
    if f.is_zero():
        return "0"
    terms = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        text = str(c)
        if "+" in text:
            text = f"({text})"
        if k == 0:
            terms.append(text)
        else:
            power = variable if k == 1 else f"{variable}^{k}"
            terms.append(power if text == "1" else f"{text}*{power}")
    return " + ".join(terms)


def is_nonzero_constant(f):
    """True iff f has degree 0, i.e. is a nonzero constant."""
    return f.degree == 0


def polynomial_gcd(f, g):
    """Monic gcd of two univariate polynomials."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def resultant(f, g):
    """
    Resultant Res(f, g) = lc(f)^deg g * prod g(roots of f), by Euclid's algorithm.

    Args:
        f (Polynomial): First polynomial.
        g (Polynomial): Second polynomial, same field.

    Returns:
        FieldElement: The resultant.
    """
    field = f.field
    if f.is_zero() or g.is_zero():
        return field.zero
    scale = field.one
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return scale * g.lc() ** m
        if m == 0:
            return scale * f.lc() ** n
        r = f % g
        if r.is_zero():
            return field.zero
        if (m * n) % 2:
            scale = -scale
        scale = scale * g.lc() ** (m - r.degree)
        f, g = g, r


class BivariatePolynomial:
    """
    A polynomial sum_k x^k * c_k(y) with degree at most one in x.

    Attributes:
        x_coeffs (tuple[Polynomial, ...]): y-polynomials c_0, c_1.
    """

    def __init__(self, x_coeffs):
        x_coeffs = list(x_coeffs)
        while len(x_coeffs) > 1 and x_coeffs[-1].is_zero():
            x_coeffs.pop()
        if len(x_coeffs) > 2:
            raise InvariantViolation("bivariate polynomials here are linear in x")
        self.field = x_coeffs[0].field
        self.x_coeffs = tuple(x_coeffs)

    @property
    def degree_y(self):
        return max(c.degree for c in self.x_coeffs)

    @property
    def degree_x(self):
        return len(self.x_coeffs) - 1

    def derivative_y(self):
        return BivariatePolynomial([c.derivative() for c in self.x_coeffs])

    def at_x(self, a):
        """The y-polynomial obtained by substituting x = a."""
        field = a.field
        result = Polynomial(field)
        power = field.one
        for c in self.x_coeffs:
            result = result + c.lift(field).scale(power)
            power = power * a
        return result

    def leading_y_coefficient_at(self, a, degree):
        value = a.field.zero
        power = a.field.one
        for c in self.x_coeffs:
            value = value + c.coefficient(degree).lift(a.field) * power
            power = power * a
        return value

    def __str__(self):
        parts = [f"({format_polynomial(c, 'y')})" + ("" if k == 0 else "*x") for k, c in enumerate(self.x_coeffs)]
        return " + ".join(parts)


def resultant_y(f, h):
    """
    Resultant of f and h with respect to y, as a polynomial in x.

    The formal resultant for y-degrees (m, n) is sampled at m + n + 1 points
    of F_{p^2} where the y-leading coefficient of f does not vanish, with a
    correction lc(f_a)^(n - deg h_a) where h drops degree, and interpolated.

    Args:
        f (BivariatePolynomial): Polynomial of y-degree m >= 1.
        h (BivariatePolynomial): Polynomial of y-degree n >= 0.

    Returns:
        Polynomial: Res_y(f, h) in x over the field of f.
    """
    m, n = f.degree_y, h.degree_y
    bound = m * h.degree_x + n * f.degree_x
    sample_field = f.field.extension()
    points = []
    for a in sample_field.elements():
        if len(points) > bound:
            break
        if not f.leading_y_coefficient_at(a, m):
            continue
        f_a = f.at_x(a)
        h_a = h.at_x(a)
        if h_a.is_zero():
            value = sample_field.zero
        else:
            value = f_a.lc() ** (n - h_a.degree) * resultant(f_a, h_a)
        points.append((a, value))
    interpolated = Polynomial.interpolate(points)
    logger.debug("resultant_y: m=%s n=%s degree bound %s, result degree %s", m, n, bound, interpolated.degree)
    if f.field.degree == 1:
        return Polynomial(f.field, [c.lift(f.field) for c in interpolated.coeffs])
    return interpolated


def is_unit_times_power_of_x(R):
    """True iff R = c * x^e with c != 0."""
    return not R.is_zero() and sum(1 for c in R.coeffs if c) == 1


@dataclass(frozen=True)
class CoverPolynomials:
    """
    The polynomials attached to a cover A(y) - x*B(y).

    Attributes:
        A, B: prod (y - alpha_i)^n_i and prod (y - beta_l)^m_l.
        A_red, B_red: the radicals prod (y - alpha_i), prod (y - beta_l).
        A_minus, B_minus: prod (y - alpha_i)^(n_i - 1), prod (y - beta_l)^(m_l - 1).
        NA, NB: sum n_i prod_{j != i}(y - alpha_j) and the analogue for B.
        g: B_red*NA - A_red*NB.
    """

    A: Polynomial
    B: Polynomial
    A_red: Polynomial
    B_red: Polynomial
    A_minus: Polynomial
    B_minus: Polynomial
    NA: Polynomial
    NB: Polynomial
    g: Polynomial

    def equation(self):
        """f(x, y) = A(y) - x*B(y)."""
        return BivariatePolynomial([self.A, -self.B])


def _weighted_log_numerator(field, roots, weights):
    """(prod (y - r), sum w_i prod_{j != i} (y - r_j))."""
    radical = Polynomial(field, [1])
    numerator = Polynomial(field)
    for root, weight in zip(roots, weights):
        linear = Polynomial(field, [-root, 1])
        numerator = numerator * linear + radical.scale(field(weight))
        radical = radical * linear
    return radical, numerator


def g_polynomial(field, alpha, n, beta, m):
    """g(y) alone, without expanding A and B."""
    A_red, NA = _weighted_log_numerator(field, alpha, n)
    B_red, NB = _weighted_log_numerator(field, beta, m)
    return B_red * NA - A_red * NB


def expand_cover_polys(spec):
    """
    Expands A, B, g and the auxiliary products of a cover specification.

    For the degree-p family (no betas) B = 1 and g reduces to NA.

    Args:
        spec: Any object with field, alpha, n, beta and m attributes.

    Returns:
        CoverPolynomials: The expanded polynomials.
    """
    field = spec.field
    A_red, NA = _weighted_log_numerator(field, spec.alpha, spec.n)
    B_red, NB = _weighted_log_numerator(field, spec.beta, spec.m)
    A = Polynomial(field, [1])
    A_minus = Polynomial(field, [1])
    for root, k in zip(spec.alpha, spec.n):
        A = A * Polynomial.linear_power(root, k)
        A_minus = A_minus * Polynomial.linear_power(root, k - 1)
    B = Polynomial(field, [1])
    B_minus = Polynomial(field, [1])
    for root, k in zip(spec.beta, spec.m):
        B = B * Polynomial.linear_power(root, k)
        B_minus = B_minus * Polynomial.linear_power(root, k - 1)
    g = B_red * NA - A_red * NB
    return CoverPolynomials(A, B, A_red, B_red, A_minus, B_minus, NA, NB, g)


def proof_identity_holds(polys):
    """Checks B_red*(B*A' - A*B') == A_minus*g*B, i.e. B*f_y = A_minus*g after x = A/B."""
    lhs = polys.B_red * (polys.B * polys.A.derivative() - polys.A * polys.B.derivative())
    return lhs == polys.A_minus * polys.g * polys.B


def power_sums(points, weights, k):
    """
    Weighted power sums sum_i w_i * z_i^j for j = 0..k.

    Args:
        points (list[FieldElement]): The z_i.
        weights (list[int]): The w_i.
        k (int): Largest exponent.

    Returns:
        list[FieldElement]: The k + 1 sums.
    """
    field = points[0].field
    sums = []
    powers = [field.one for _ in points]
    for _ in range(k + 1):
        sums.append(sum((p * w for p, w in zip(powers, weights)), field.zero))
        powers = [p * z for p, z in zip(powers, points)]
    return sums


# Example usage:
# F = FiniteField.quadratic(7)
# w = F.gen
# print(w * w, sqrt_in_field(F(3)))
