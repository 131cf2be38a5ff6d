"""Explicit covers A(y) - x*B(y) of the projective line branched over 0 and infinity.

A CoverSpec fixes the data (p, t, s, r, n, m, alpha, beta): the cover is
f(x, y) = prod (y - alpha_i)^n_i - x * prod (y - beta_l)^m_l of degree
d = p + t. t = 0 and r = 0 encode the degree-p family f = prod (y - alpha_i)^n_i - x.
TrinomialSpec is the separate degree-p family y^p - y^t - x.
"""

import itertools
import logging
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction

import pandas as pd
from sympy import divisors, isprime

from inertia_lab.config import DEFAULT_SETTINGS
from inertia_lab.errors import (
    AssumptionFails,
    BudgetExceeded,
    InvalidSpec,
    NotASquare,
    ParseError,
    SideConditionViolated,
)
from inertia_lab.ff import (
    CoverPolynomials,
    FiniteField,
    Polynomial,
    expand_cover_polys,
    g_polynomial,
    is_nonzero_constant,
    is_unit_times_power_of_x,
    parse_element,
    power_sums,
    resultant_y,
    smallest_non_residue,
    sqrt_in_field,
)
from inertia_lab.inertia import InertiaShape, RamificationProfile
from inertia_lab.perm import Perm, jones_criterion

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverSpec:
    """
    Parameters of the cover prod (y - alpha_i)^n_i - x * prod (y - beta_l)^m_l.

    Attributes:
        p (int): Odd prime.
        t (int): d - p; 0 for the degree-p family.
        s (int): Number of points over 0.
        r (int): Number of points over infinity besides the wild one.
        n (tuple[int, ...]): Ramification indices over 0, summing to p + t.
        m (tuple[int, ...]): Tame indices over infinity, summing to t.
        alpha (tuple[FieldElement, ...]): Points over 0.
        beta (tuple[FieldElement, ...]): Points over infinity.
        field (FiniteField): Field of definition of alpha and beta.
        family (str): Name of the witness family, if any.
    """

    p: int
    t: int
    s: int
    r: int
    n: tuple
    m: tuple
    alpha: tuple
    beta: tuple
    field: FiniteField
    family: str = ""

    @property
    def d(self):
        return self.p + self.t

    @property
    def is_degree_p(self):
        return self.t == 0

    def polynomials(self):
        return expand_cover_polys(self)

    def equation(self):
        return self.polynomials().equation()

    def g(self):
        return g_polynomial(self.field, self.alpha, self.n, self.beta, self.m)

    def points(self):
        return self.alpha + self.beta

    def weights(self):
        return tuple(self.n) + tuple(-x for x in self.m)

    def gamma(self):
        """Tame inertia generator over 0: consecutive cycles of lengths n."""
        return _consecutive_cycles(self.n, 1, self.d)

    def omega(self):
        return _consecutive_cycles(self.m, self.p + 1, self.d)

    def over0_lengths(self):
        return tuple(self.n)

    def over_inf_lengths(self):
        return (self.p,) + tuple(self.m)

    @property
    def jump_numerator(self):
        return self.r + self.s - 1

    def with_points(self, alpha=None, beta=None):
        return replace(
            self,
            alpha=tuple(alpha) if alpha is not None else self.alpha,
            beta=tuple(beta) if beta is not None else self.beta,
        )

    def to_text(self):
        """Single-line key=value text, with a ``w^2=nu`` header over F_{p^2}."""
        join = ",".join
        line = (
            f"p={self.p} t={self.t} s={self.s} r={self.r} n={join(map(str, self.n))} "
            f"m={join(map(str, self.m))} alpha={join(map(str, self.alpha))} "
            f"beta={join(map(str, self.beta))} field={self.field.name}"
        )
        if self.field.degree == 2:
            return f"w^2={self.field.nu}\n{line}"
        return line

    def __str__(self):
        return self.to_text().replace("\n", " ")


@dataclass(frozen=True)
class TrinomialSpec:
    """
    The degree-p cover y^p - y^t - x.

    Over 0 it has one point of index t and p - t unramified points; over
    infinity it is totally (wildly) ramified.
    """

    p: int
    t: int
    family: str = "trinomial"

    @property
    def d(self):
        return self.p

    @property
    def field(self):
        return FiniteField.prime(self.p)

    @property
    def s(self):
        return self.p - self.t + 1

    @property
    def r(self):
        return 0

    @property
    def jump_numerator(self):
        return self.p - self.t

    @property
    def is_degree_p(self):
        return True

    def polynomials(self):
        F = self.field
        y = Polynomial.variable(F)
        A = y ** self.p - y ** self.t
        one = Polynomial(F, [1])
        g = Polynomial(F, [-self.t])
        return CoverPolynomials(
            A=A,
            B=one,
            A_red=y * (y ** (self.p - self.t) - 1),
            B_red=one,
            A_minus=y ** (self.t - 1),
            B_minus=one,
            NA=g,
            NB=Polynomial(F),
            g=g,
        )

    def equation(self):
        return self.polynomials().equation()

    def g(self):
        return self.polynomials().g

    def gamma(self):
        return _consecutive_cycles((self.t,), 1, self.p)

    def omega(self):
        return Perm.identity(self.p)

    def over0_lengths(self):
        return (self.t,) + (1,) * (self.p - self.t)

    def over_inf_lengths(self):
        return (self.p,)

    def to_text(self):
        return f"family=trinomial p={self.p} t={self.t}"

    def __str__(self):
        return self.to_text()


def _consecutive_cycles(lengths, start, degree):
    cycles = []
    for length in lengths:
        if length > 1:
            cycles.append(range(start, start + length))
        start += length
    return Perm.from_cycles(cycles, degree)


def parse_cover_spec(text):
    """
    Parses the key=value cover format, e.g.
    ``p=7 t=2 s=2 r=1 n=8,1 m=2 alpha=1,6 beta=0 field=Fp``.

    A ``w^2=nu`` line may precede an F_{p^2} spec; nu must be the smallest
    non-residue. ``family=trinomial p=.. t=..`` gives a TrinomialSpec.

    Raises:
        ParseError: If a key is missing or a value is malformed.
    """
    header = re.search(r"w\^2\s*=\s*(-?\d+)", text)
    body = re.sub(r"w\^2\s*=\s*-?\d+", " ", text)
    fields = dict(re.findall(r"(\w+)=(\S*)", body))
    try:
        p = int(fields["p"])
        if fields.get("family") == "trinomial":
            return TrinomialSpec(p, int(fields["t"]))
        field_name = fields.get("field", "Fp2" if header else "Fp")
        if field_name not in ("Fp", "Fp2"):
            raise ParseError(f"unknown field {field_name!r}")
        F = FiniteField.prime(p) if field_name == "Fp" else FiniteField.quadratic(p)
        if header and F.degree == 2 and int(header.group(1)) % p != smallest_non_residue(p):
            raise ParseError(f"w^2={header.group(1)} is not the field's non-residue {F.nu}")

        def ints(key):
            value = fields.get(key, "")
            return tuple(int(x) for x in value.split(",") if x)

        def elements(key):
            value = fields.get(key, "")
            return tuple(parse_element(x, F) for x in value.split(",") if x)

        n, m = ints("n"), ints("m")
        return CoverSpec(
            p=p,
            t=int(fields.get("t", sum(m))),
            s=int(fields.get("s", len(n))),
            r=int(fields.get("r", len(m))),
            n=n,
            m=m,
            alpha=elements("alpha"),
            beta=elements("beta"),
            field=F,
            family=fields.get("family", ""),
        )
    except (KeyError, ValueError) as e:
        raise ParseError(f"malformed cover spec ({e})") from e


def validate_spec(spec):
    """
    Lists every violated invariant of a cover spec; never raises.

    Returns:
        list[str]: Empty when the spec is valid.
    """
    violations = []
    p = spec.p
    if not isinstance(p, int) or p < 3 or not isprime(p):
        return [f"p={p} is not an odd prime"]
    if isinstance(spec, TrinomialSpec):
        if not 1 <= spec.t <= p - 1:
            violations.append(f"t={spec.t} outside [1, {p - 1}]")
        return violations
    if spec.field.p != p:
        violations.append(f"field characteristic {spec.field.p} differs from p={p}")
    if spec.t < 0:
        violations.append(f"t={spec.t} is negative")
    if spec.s < 1:
        violations.append(f"s={spec.s} must be at least 1")
    if spec.r < 0:
        violations.append(f"r={spec.r} is negative")
    if spec.t == 0 and spec.r != 0:
        violations.append("the degree-p family (t=0) has r=0")
    if spec.t > 0 and spec.r == 0:
        violations.append("r=0 is only allowed when t=0")
    if spec.d < 5:
        violations.append(f"degree d={spec.d} is below 5")
    if len(spec.n) != spec.s or len(spec.alpha) != spec.s:
        violations.append(f"n and alpha must have s={spec.s} entries")
    if len(spec.m) != spec.r or len(spec.beta) != spec.r:
        violations.append(f"m and beta must have r={spec.r} entries")
    for name, values in (("n", spec.n), ("m", spec.m)):
        for k in values:
            if k < 1:
                violations.append(f"{name} entry {k} is not positive")
            elif k % p == 0:
                violations.append(f"{name} entry {k} is not coprime to p={p}")
    if sum(spec.n) != p + spec.t:
        violations.append(f"sum of n is {sum(spec.n)}, expected p+t={p + spec.t}")
    if sum(spec.m) != spec.t:
        violations.append(f"sum of m is {sum(spec.m)}, expected t={spec.t}")
    points = list(spec.alpha) + list(spec.beta)
    if any(z.field != spec.field for z in points):
        violations.append(f"points must lie in {spec.field}")
    elif len(set(points)) != len(points):
        violations.append("alpha and beta entries must be pairwise distinct")
    return violations


@dataclass(frozen=True)
class AssumptionResult:
    holds: bool
    g_constant: object
    g: Polynomial


def check_assumption(spec):
    """
    Whether g(y) is a nonzero constant.

    Raises:
        InvalidSpec: If the spec fails validation.
    """
    violations = validate_spec(spec)
    if violations:
        raise InvalidSpec(violations)
    g = spec.g()
    holds = is_nonzero_constant(g)
    return AssumptionResult(holds, g.coeffs[0] if holds else None, g)


@dataclass(frozen=True)
class PowerSumVerdict:
    holds: bool
    constant: object
    sums: tuple


def power_sum_verdict(spec):
    """
    Constancy of g read off weighted power sums of the points.

    With K = s + r points z and weights (n, -m), g is a nonzero constant
    exactly when sum e*z^j vanishes for j = 0..K-2; the constant is then
    sum e*z^(K-1).
    """
    K = spec.s + spec.r
    sums = power_sums(list(spec.points()), list(spec.weights()), K - 1)
    holds = all(not c for c in sums[:-1]) and bool(sums[-1])
    return PowerSumVerdict(holds, sums[-1] if holds else None, tuple(sums))


@dataclass(frozen=True)
class CoefficientConditions:
    coefficients: tuple
    constant: object
    holds: bool


def r1_coefficient_conditions(spec):
    """
    Coefficient conditions for r = 1 after moving beta_1 to 0.

    For k = 1..s-1 the sum over k-subsets S of (sum_{i in S} n_i) * prod_{i in S} alpha_i
    must vanish, and t * prod alpha_i must not.
    """
    if spec.r != 1:
        raise InvalidSpec([f"coefficient conditions need r=1, got r={spec.r}"])
    shift = spec.beta[0]
    alpha = [a - shift for a in spec.alpha]
    F = spec.field
    coefficients = []
    for k in range(1, spec.s):
        total = F.zero
        for subset in itertools.combinations(range(spec.s), k):
            product = F.one
            for i in subset:
                product = product * alpha[i]
            total = total + product * sum(spec.n[i] for i in subset)
        coefficients.append(total)
    product = F.one
    for a in alpha:
        product = product * a
    constant = product * spec.t
    holds = all(not c for c in coefficients) and bool(constant)
    return CoefficientConditions(tuple(coefficients), constant, holds)


def affine_image(spec, c, e):
    """The spec with every point z replaced by c*z + e."""
    return spec.with_points([c * a + e for a in spec.alpha], [c * b + e for b in spec.beta])


class GaloisVerdict(str, Enum):
    ALTERNATING = "A_d"
    SYMMETRIC = "S_d"
    CONTAINS_ALT_UNDECIDED_PARITY = "ContainsAlt-undecided-parity"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class GaloisDecision:
    """
    The Galois group as decided by the primitivity and A_d criteria.

    Attributes:
        verdict (GaloisVerdict): A_d, S_d or an undecided outcome.
        primitivity (str | None): Reason the group is primitive.
        clause (str | None): Criterion that shows A_d is contained.
        basis (str): Always "criterion"; no monodromy is computed.
    """

    verdict: GaloisVerdict
    primitivity: str | None
    clause: str | None
    basis: str = "criterion"


@dataclass(frozen=True)
class RamificationReport:
    spec: object
    d: int
    over0: RamificationProfile
    over_inf: RamificationProfile
    etale: bool
    discriminant: Polynomial
    genus: int
    genus_reason: str
    jump: Fraction
    theta_order: int
    shape0: InertiaShape
    shape_inf: InertiaShape
    galois: GaloisDecision | None = None

    def to_dict(self):
        return {
            "spec": self.spec.to_text(),
            "d": self.d,
            "over0": list(self.over0.indices),
            "over_inf": list(self.over_inf.indices),
            "etale_outside_0_inf": self.etale,
            "resultant": str(self.discriminant).replace("y", "x"),
            "genus": self.genus,
            "upper_jump": str(self.jump),
            "theta_order": self.theta_order,
            "inertia_over_0": str(self.shape0),
            "inertia_over_inf": str(self.shape_inf),
            "galois": self.galois.verdict.value if self.galois else None,
            "galois_clause": self.galois.clause if self.galois else None,
        }

    def to_text(self):
        lines = [
            f"cover: {self.spec}",
            f"degree: {self.d}",
            f"over 0: {self.over0}",
            f"over infinity: {self.over_inf}",
            f"etale outside {{0, infinity}}: {'yes' if self.etale else 'no'}",
            f"genus: {self.genus} ({self.genus_reason})",
            f"upper jump: {self.jump}",
            f"order of theta part: {self.theta_order}",
            f"inertia over 0: {self.shape0}",
            f"inertia over infinity: {self.shape_inf}",
        ]
        if self.galois:
            clause = f" via {self.galois.clause}" if self.galois.clause else ""
            lines.append(f"galois group: {self.galois.verdict.value}{clause} ({self.galois.basis})")
        return "\n".join(lines)


def ramification_report(spec):
    """
    Profiles, étale check, jump and inertia shapes of a cover.

    Args:
        spec (CoverSpec | TrinomialSpec): The cover.

    Returns:
        RamificationReport: The report, with its Galois decision.

    Raises:
        AssumptionFails: If g(y) is not a nonzero constant.
    """
    assumption = check_assumption(spec)
    if not assumption.holds:
        raise AssumptionFails(f"g(y) = {assumption.g} is not a nonzero constant for {spec}")
    p, d = spec.p, spec.d
    f = spec.equation()
    R = resultant_y(f, f.derivative_y())
    numerator = spec.jump_numerator
    g = math.gcd(p - 1, numerator)
    theta_order = (p - 1) // g
    shape0 = InertiaShape.tame(p, d, spec.gamma())
    shape_inf = InertiaShape.wild(p, d, g % (p - 1), spec.omega())
    report = RamificationReport(
        spec=spec,
        d=d,
        over0=RamificationProfile.of(spec.over0_lengths()),
        over_inf=RamificationProfile.of(spec.over_inf_lengths()),
        etale=is_unit_times_power_of_x(R),
        discriminant=R,
        genus=0,
        genus_reason="y parametrizes the cover",
        jump=Fraction(numerator, p - 1),
        theta_order=theta_order,
        shape0=shape0,
        shape_inf=shape_inf,
    )
    report = replace(report, galois=galois_decision(spec, report))
    logger.debug("report for %s: jump %s, galois %s", spec, report.jump, report.galois.verdict.value)
    return report


def _is_transposition(x):
    cycle_type = x.cycle_type()
    return cycle_type[0] == 2 and cycle_type.count(2) == 1


def _transposition_power(gamma):
    """Smallest j with gamma^j a transposition, or None."""
    return next((j for j in divisors(gamma.order()) if _is_transposition(gamma ** j)), None)


def galois_decision(spec, report):
    """
    Decides A_d or S_d from the inertia data.

    Primitivity follows from prime degree or from the p-cycle fixing
    t < d/2 points. A power of gamma that is a transposition gives S_d;
    otherwise a containment criterion plus the parity of gamma decides.
    """
    d, p, t = spec.d, spec.p, spec.t
    if d == p:
        primitivity = "prime degree"
    elif 2 * t < d:
        primitivity = f"p-cycle fixing t={t} < d/2 points"
    else:
        return GaloisDecision(GaloisVerdict.UNDECIDED, None, None)
    gamma = report.shape0.gamma
    if _transposition_power(gamma) is not None:
        return GaloisDecision(GaloisVerdict.SYMMETRIC, primitivity, "transposition-power")
    jones = jones_criterion(d, p, gamma, t)
    if not jones.contains_alt:
        return GaloisDecision(GaloisVerdict.UNDECIDED, primitivity, None)
    if not report.etale:
        return GaloisDecision(GaloisVerdict.CONTAINS_ALT_UNDECIDED_PARITY, primitivity, jones.clause)
    verdict = GaloisVerdict.ALTERNATING if gamma.is_even() else GaloisVerdict.SYMMETRIC
    return GaloisDecision(verdict, primitivity, jones.clause)


def _field_with_root(p, value):
    """(field, sqrt(value)) over F_p when possible, else over F_{p^2}."""
    F = FiniteField.prime(p)
    try:
        return F, sqrt_in_field(value(F))
    except NotASquare:
        K = FiniteField.quadratic(p)
        return K, sqrt_in_field(value(K))


def _require(condition, family, p, reason):
    if not condition:
        raise SideConditionViolated(family, p, reason)


def _check_prime(family, p):
    _require(isinstance(p, int) and p >= 5 and isprime(p), family, p, "p must be a prime >= 5")


def _base_1_1(p, t=1, **_):
    _check_prime("base-1-1", p)
    _require(1 <= t and t % p, "base-1-1", p, f"t={t} must be positive and prime to p")
    F = FiniteField.prime(p)
    return CoverSpec(p, t, 1, 1, (p + t,), (t,), (F(1),), (F(0),), F, "base-1-1")


def _base_2_1(p, t=1, n=None, **_):
    _check_prime("base-2-1", p)
    n = tuple(n) if n else (p + t - 1, 1)
    _require(len(n) == 2 and sum(n) == p + t, "base-2-1", p, f"n={n} must be a pair summing to p+t")
    _require(all(k % p for k in n) and t % p, "base-2-1", p, "n and t must be prime to p")
    F = FiniteField.prime(p)
    return CoverSpec(p, t, 2, 1, n, (t,), (F(1), -F.from_fraction(n[0], n[1])), (F(0),), F, "base-2-1")


def _base_1_2(p, t=2, m=None, **_):
    _check_prime("base-1-2", p)
    m = tuple(m) if m else (t - 1, 1)
    _require(len(m) == 2 and sum(m) == t, "base-1-2", p, f"m={m} must be a pair summing to t")
    _require(all(k % p for k in m), "base-1-2", p, "m must be prime to p")
    F = FiniteField.prime(p)
    return CoverSpec(p, t, 1, 2, (p + t,), m, (F(0),), (F(1), -F.from_fraction(m[0], m[1])), F, "base-1-2")


def _base_3_1(p, t=1, **_):
    _check_prime("base-3-1", p)
    _require((t + 2) % p and (t - 2) % p and t % p, "base-3-1", p, "(p,t+2) = 1 = (p,t-2)")
    F = FiniteField.prime(p)
    alpha = (F.from_fraction(t + 2, 4), -F.from_fraction(t - 2, 4), F(1))
    return CoverSpec(p, t, 3, 1, (p - 2, 2, t), (t,), alpha, (F(0),), F, "base-3-1")


def _base_2_2(p, t=3, n=None, m=None, **_):
    _check_prime("base-2-2", p)
    n = tuple(n) if n else (p + t - 1, 1)
    m = tuple(m) if m else (t - 1, 1)
    _require(sum(n) == p + t and sum(m) == t, "base-2-2", p, "n must sum to p+t and m to t")
    _require(all((a - b) % p == 0 for a, b in zip(n, m)), "base-2-2", p, "n must agree with m mod p")
    _require((n[0] - n[1]) % p != 0, "base-2-2", p, "n_1 and n_2 must differ mod p")
    F = FiniteField.prime(p)
    two_n2 = 2 * n[1]
    alpha = (F(1), F.from_fraction(n[1] - n[0], two_n2))
    beta = (F(0), F.from_fraction(t, two_n2))
    return CoverSpec(p, t, 2, 2, n, m, alpha, beta, F, "base-2-2")


def _degree_p_2(p, n=None, **_):
    _check_prime("degree-p-2", p)
    n = tuple(n) if n else (p - 2, 2)
    _require(len(n) == 2 and sum(n) == p, "degree-p-2", p, f"n={n} must be a pair summing to p")
    F = FiniteField.prime(p)
    return CoverSpec(p, 0, 2, 0, n, (), (F(0), F(1)), (), F, "degree-p-2")


def _degree_p_3(p, n=None, **_):
    _check_prime("degree-p-3", p)
    n = tuple(n) if n else (p - 3, 2, 1)
    _require(len(n) == 3 and sum(n) == p, "degree-p-3", p, f"n={n} must be a triple summing to p")
    F = FiniteField.prime(p)
    return CoverSpec(p, 0, 3, 0, n, (), (F(0), F(1), -F.from_fraction(n[1], n[2])), (), F, "degree-p-3")


def _trinomial(p, t=2, **_):
    _check_prime("trinomial", p)
    _require(1 <= t <= p - 1, "trinomial", p, f"t={t} outside [1, p-1]")
    return TrinomialSpec(p, t)


def _mod3(family, p):
    _require(p % 3 == 2, family, p, "p = 2 mod 3")


def _a_p1(p, **_):
    _mod3("A_p+1", p)
    return replace(_base_3_1(p, t=1), family="A_p+1")


def _a_p3_21(p, **_):
    _mod3("A_p+3-21", p)
    return replace(_base_2_1(p, t=3, n=(p + 2, 1)), family="A_p+3-21")


def _a_p3_22(p, **_):
    _mod3("A_p+3-22", p)
    return replace(_base_2_2(p, t=3, n=(p + 2, 1), m=(2, 1)), family="A_p+3-22")


def _a_p4_22(p, **_):
    _check_prime("A_p+4-22", p)
    _mod3("A_p+4-22", p)
    F, w = _field_with_root(p, lambda K: K(3))
    alpha = ((1 + w) / 4, (1 - w) / 4)
    return CoverSpec(p, 4, 2, 2, (p + 2, 2), (3, 1), alpha, (F(0), F(1)), F, "A_p+4-22")


def _a_p4_31(p, **_):
    _check_prime("A_p+4-31", p)
    _mod3("A_p+4-31", p)
    F, w = _field_with_root(p, lambda K: K(2))
    alpha = (F(1), (1 + w) / 3, (1 - w) / 3)
    return CoverSpec(p, 4, 3, 1, (p - 2, 3, 3), (4,), alpha, (F(0),), F, "A_p+4-31")


def _a_p5_conditions(family, p):
    _check_prime(family, p)
    _mod3(family, p)
    _require(p >= 17, family, p, "p >= 17")


def _a_p5_i4(p, **_):
    _a_p5_conditions("A_p+5-I4", p)
    F, w = _field_with_root(p, lambda K: K.from_fraction(2, 3))
    alpha = ((1 - 3 * w) / 5, (1 + 2 * w) / 5)
    return CoverSpec(p, 5, 2, 2, (p + 2, 3), (4, 1), alpha, (F(0), F(1)), F, "A_p+5-I4")


def _a_p5_i5(p, **_):
    _a_p5_conditions("A_p+5-I5", p)
    if (p - 1) % 5:
        return replace(_base_2_1(p, t=5, n=(p + 4, 1)), family="A_p+5-I5")
    F, w = _field_with_root(p, lambda K: K(15))
    alpha = ((w - 1) / 2, (w - 3) / 6, F(2))
    return CoverSpec(p, 5, 3, 1, (p - 2, 6, 1), (5,), alpha, (F(0),), F, "A_p+5-I5")


def _a_p5_23(p, **_):
    _a_p5_conditions("A_p+5-23", p)
    _require((p + 1) % 4 != 0, "A_p+5-23", p, "4 does not divide p+1")
    F, w = _field_with_root(p, lambda K: K(6))
    half = (p + 5) // 2
    alpha = ((3 + w) / 5, (3 - w) / 5)
    return CoverSpec(p, 5, 2, 2, (half, half), (2, 3), alpha, (F(0), F(1)), F, "A_p+5-23")


# The published data for the last three A_{p+5} and S_{p+2} routes. They are
# kept for comparison only: the routes above use the re-derived witnesses.


def _a_p5_i5_published(p, **_):
    family = "A_p+5-I5-published"
    _a_p5_conditions(family, p)
    _require((p - 1) % 5 == 0, family, p, "5 divides p-1")
    F, w = _field_with_root(p, lambda K: K(7))
    alpha = ((w + 1) / 2, (w - 1) / 6, F(2))
    return CoverSpec(p, 5, 3, 1, (p - 2, 6, 1), (5,), alpha, (F(0),), F, family)


def _a_p5_23_published(p, **_):
    family = "A_p+5-23-published"
    _a_p5_conditions(family, p)
    _require((p + 1) % 4 != 0, family, p, "4 does not divide p+1")
    F, w = _field_with_root(p, lambda K: K(3))
    half = (p + 5) // 2
    alpha = ((3 + 2 * w) / 5, (3 - 2 * w) / 5)
    return CoverSpec(p, 5, 2, 2, (half, half), (2, 3), alpha, (F(0), F(1)), F, family)


def _s_p2_a_published(p, **_):
    family = "S_p+2-A-published"
    _mod12(family, p)
    F = FiniteField.prime(p)
    n, t = (p + 1, 1), 2
    alpha = (F(1), F.from_fraction(n[1] - n[0], 2 * n[1]))
    beta = (F(0), F.from_fraction(t, 2 * n[1]))
    return CoverSpec(p, t, 2, 2, n, (1, 1), alpha, beta, F, family)


def _s_p2_b_published(p, **_):
    family = "S_p+2-B-published"
    _mod12(family, p)
    return replace(_base_2_1(p, t=2, n=(p + 1, 1)), family=family)


def _mod12(family, p):
    _check_prime(family, p)
    _require(p % 12 == 11, family, p, "p = 11 mod 12")


def _s_p2_a(p, **_):
    _mod12("S_p+2-A", p)
    F, w = _field_with_root(p, lambda K: K(-2))
    beta = (w - 1, -w - 1)
    return CoverSpec(p, 2, 2, 2, (p - 2, 4), (1, 1), (F(1), F(0)), beta, F, "S_p+2-A")


def _s_p2_b(p, **_):
    _mod12("S_p+2-B", p)
    F = FiniteField.prime(p)
    return CoverSpec(p, 2, 2, 1, (p - 2, 4), (2,), (F(1), F.from_fraction(1, 2)), (F(0),), F, "S_p+2-B")


def _s_p3_r3(p, **_):
    _mod12("S_p+3-r3", p)
    F, w = _field_with_root(p, lambda K: K(p - 3))
    beta = (F(1), (w - 1) / 2, -(w + 1) / 2)
    return CoverSpec(p, 3, 1, 3, (p + 3,), (1, 1, 1), (F(0),), beta, F, "S_p+3-r3")


def _s_p3_r2(p, **_):
    _mod12("S_p+3-r2", p)
    return replace(_base_1_2(p, t=3, m=(2, 1)), family="S_p+3-r2")


def _s_p3_r1(p, **_):
    _mod12("S_p+3-r1", p)
    return replace(_base_1_1(p, t=3), family="S_p+3-r1")


def _odd_t_21(p, t=3, **_):
    _require(t % 2 == 1 and 3 <= t <= p - 2, "odd-t-21", p, f"t={t} must be odd in [3, p-2]")
    _require(math.gcd(t, p - 1) == 1, "odd-t-21", p, f"gcd(t, p-1) = {math.gcd(t, p - 1)} must be 1")
    return replace(_base_2_1(p, t=t, n=(p + t - 1, 1)), family="odd-t-21")


def _even_t_12(p, t=4, **_):
    _check_prime("even-t-12", p)
    _require(4 <= t <= p - 1, "even-t-12", p, f"t={t} must lie in [4, p-1]")
    _require(math.gcd(t + 1, p - 1) == 1 and math.gcd(t - 1, p + 1) == 1, "even-t-12", p, "(t+1,p-1) = 1 = (t-1,p+1)")
    return replace(_base_1_2(p, t=t, m=(t - 1, 1)), family="even-t-12")


def _odd_t_22(p, t=3, **_):
    _check_prime("odd-t-22", p)
    _require(3 <= t <= p - 1, "odd-t-22", p, f"t={t} must lie in [3, p-1]")
    _mod3("odd-t-22", p)
    return replace(_base_2_2(p, t=t, n=(p + t - 1, 1), m=(t - 1, 1)), family="odd-t-22")


WITNESS_FAMILIES = {
    "base-1-1": _base_1_1,
    "base-2-1": _base_2_1,
    "base-1-2": _base_1_2,
    "base-3-1": _base_3_1,
    "base-2-2": _base_2_2,
    "degree-p-2": _degree_p_2,
    "degree-p-3": _degree_p_3,
    "trinomial": _trinomial,
    "A_p+1": _a_p1,
    "A_p+3-21": _a_p3_21,
    "A_p+3-22": _a_p3_22,
    "A_p+4-22": _a_p4_22,
    "A_p+4-31": _a_p4_31,
    "A_p+5-I4": _a_p5_i4,
    "A_p+5-I5": _a_p5_i5,
    "A_p+5-23": _a_p5_23,
    "S_p+2-A": _s_p2_a,
    "S_p+2-B": _s_p2_b,
    "A_p+5-I5-published": _a_p5_i5_published,
    "A_p+5-23-published": _a_p5_23_published,
    "S_p+2-A-published": _s_p2_a_published,
    "S_p+2-B-published": _s_p2_b_published,
    "S_p+3-r3": _s_p3_r3,
    "S_p+3-r2": _s_p3_r2,
    "S_p+3-r1": _s_p3_r1,
    "odd-t-21": _odd_t_21,
    "even-t-12": _even_t_12,
    "odd-t-22": _odd_t_22,
}


def known_witness(family, p, **params):
    """
    A fully populated cover from a named witness family.

    Square roots are taken in F_p when possible and in F_{p^2} otherwise.

    Args:
        family (str): Key of WITNESS_FAMILIES.
        p (int): Prime.
        **params: Family parameters such as t, n or m.

    Returns:
        CoverSpec | TrinomialSpec: The witness.

    Raises:
        SideConditionViolated: If p or the parameters fail the family's conditions.
        KeyError: For an unknown family.
    """
    try:
        builder = WITNESS_FAMILIES[family]
    except KeyError:
        raise KeyError(f"unknown witness family {family!r}") from None
    return builder(p, **params)


def normalize(spec):
    """Moves beta_1 (or alpha_1 when r = 0) to 0 and then alpha_1 (or alpha_2) to 1."""
    if spec.r >= 1:
        origin, unit = spec.beta[0], spec.alpha[0]
    else:
        origin, unit = spec.alpha[0], spec.alpha[1]
    c = (unit - origin).inverse()
    return affine_image(spec, c, -origin * c)


def _sort_key(spec):
    return tuple((z.b, z.a) for z in spec.points())


def _search_shard(args):
    p, t, s, r, n, m, degree, first = args
    F = FiniteField(p, degree)
    fixed_alpha, fixed_beta = _normal_frame(F, r)
    first = F(*first)
    elements = list(F.elements())
    free = s + r - 2 if r >= 1 else s - 2
    hits = []
    for rest in itertools.product(elements, repeat=max(free - 1, 0)):
        coords = (first,) + rest
        if r >= 1:
            alpha = fixed_alpha + coords[: s - 1]
            beta = fixed_beta + coords[s - 1:]
        else:
            alpha = fixed_alpha + coords
            beta = ()
        points = alpha + beta
        if len(set(points)) != len(points):
            continue
        if is_nonzero_constant(g_polynomial(F, alpha, n, beta, m)):
            hits.append(CoverSpec(p, t, s, r, n, m, alpha, beta, F, "search"))
    return hits


def _normal_frame(F, r):
    if r >= 1:
        return (F(1),), (F(0),)
    return (F(0), F(1)), ()


@dataclass
class WitnessSearchResult:
    p: int
    t: int
    s: int
    r: int
    n: tuple
    m: tuple
    field: FiniteField
    visited: int
    witnesses: list = field(default_factory=list)

    def to_dataframe(self):
        return pd.DataFrame(
            [
                {
                    "alpha": ",".join(map(str, w.alpha)),
                    "beta": ",".join(map(str, w.beta)),
                    "g": str(w.g()),
                }
                for w in self.witnesses
            ],
            columns=["alpha", "beta", "g"],
        )

    def save_to_csv(self, directory="witnesses"):
        """
        Saves the witnesses found as CSV.

        Args:
            directory (str): Output directory, created when missing.

        Returns:
            str: Path of the written file.
        """
        os.makedirs(directory, exist_ok=True)
        name = f"witnesses_p{self.p}_t{self.t}_s{self.s}_r{self.r}_{self.field.name}.csv"
        path = os.path.join(directory, name)
        self.to_dataframe().to_csv(path, index=False)
        return path


def witness_search(p, t, s, r, n=None, m=None, field_degree=1, budget=None, settings=None, workers=None):
    """
    Exhaustively finds every normalized tuple (alpha, beta) with g a nonzero constant.

    The affine action lets beta_1 = 0 and alpha_1 = 1 (alpha_1 = 0 and
    alpha_2 = 1 when r = 0); the remaining coordinates run over the field.

    Args:
        p, t, s, r (int): Cover shape.
        n, m (Sequence[int] | None): Indices; default to (p+t) and (t) for s = 1 and r = 1.
        field_degree (int): 1 for F_p, 2 for F_{p^2}.
        budget (int | None): Maximum number of tuples; defaults to settings.search_budget.
        settings (Settings | None): Budget and worker defaults.
        workers (int | None): Worker processes; shards are split on the first free coordinate.

    Returns:
        WitnessSearchResult: Witnesses sorted by coordinates.

    Raises:
        BudgetExceeded: If the search space exceeds the budget.
        InvalidSpec: If the indices are inconsistent.
    """
    settings = settings or DEFAULT_SETTINGS
    budget = budget if budget is not None else settings.search_budget
    workers = workers if workers is not None else settings.workers
    n = tuple(n) if n else ((p + t,) if s == 1 else ())
    m = tuple(m) if m else ((t,) if r == 1 else ())
    F = FiniteField(p, field_degree)
    fixed_alpha, fixed_beta = _normal_frame(F, r)
    probe = CoverSpec(
        p, t, s, r, n, m,
        tuple(F(k + 2) for k in range(s)), tuple(F(-k - 2) for k in range(r)), F,
    )
    violations = [v for v in validate_spec(probe) if "distinct" not in v]
    if violations:
        raise InvalidSpec(violations)
    if r == 0 and s < 2:
        raise InvalidSpec(["the degree-p family needs s >= 2"])
    free = s + r - 2 if r >= 1 else s - 2
    visited = F.order ** free
    if visited > budget:
        raise BudgetExceeded(f"search space {visited} exceeds the budget {budget}")
    if free == 0:
        alpha = fixed_alpha
        beta = fixed_beta
        hits = []
        if is_nonzero_constant(g_polynomial(F, alpha, n, beta, m)):
            hits.append(CoverSpec(p, t, s, r, n, m, alpha, beta, F, "search"))
    else:
        shards = [(p, t, s, r, n, m, field_degree, (z.a, z.b)) for z in F.elements()]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_search_shard, shards))
        else:
            results = [_search_shard(shard) for shard in shards]
        hits = [spec for shard in results for spec in shard]
    hits.sort(key=_sort_key)
    logger.info("witness search p=%s t=%s s=%s r=%s over %s: %s of %s tuples", p, t, s, r, F, len(hits), visited)
    return WitnessSearchResult(p, t, s, r, n, m, F, visited, hits)


# Example usage:
# spec = known_witness("A_p+1", 5)
# print(ramification_report(spec).to_text())
