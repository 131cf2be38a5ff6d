"""Inertia shapes <tau> x| <theta^i * omega> and purely tame cyclic shapes.

A wild shape is stored as (p, d, i, omega) with omega supported on
{p+1..d}; two shapes are compared through ``shape_key``, which only sees
gcd(i, p-1) and the cycle type of omega.
"""

import logging
import math
import os
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import pandas as pd
from sympy import divisors, isprime
from sympy.utilities.iterables import partitions

from inertia_lab.config import DEFAULT_SETTINGS
from inertia_lab.errors import BadRange, InvariantViolation, NotCoprime, ParseError, Unsupported
from inertia_lab.perm import GroupClass, Perm, PermGroup, classify_alt_sym, make_tau, make_theta, normal_closure

logger = logging.getLogger(__name__)


class ShapeKind(str, Enum):
    WILD = "wild"
    TAME = "tame"


@dataclass(frozen=True)
class InertiaShape:
    """
    An inertia group inside S_d.

    Attributes:
        p (int): Characteristic.
        d (int): Degree.
        kind (ShapeKind): WILD for <tau> x| <theta^i omega>, TAME for <gamma>.
        theta_exp (int): i in [0, p-1); 0 means no theta part.
        omega (Perm | None): Tame tail on {p+1..d} (wild shapes).
        gamma (Perm | None): Generator (tame shapes).
    """

    p: int
    d: int
    kind: ShapeKind
    theta_exp: int = 0
    omega: Perm | None = None
    gamma: Perm | None = None

    def __post_init__(self):
        if self.kind is ShapeKind.WILD:
            if not 0 <= self.theta_exp < self.p - 1:
                raise InvariantViolation(f"theta exponent {self.theta_exp} outside [0, {self.p - 1})")
            if self.p > self.d:
                raise InvariantViolation(f"p={self.p} exceeds degree {self.d}")
            if self.omega is None or self.omega.degree != self.d:
                raise InvariantViolation("omega must be a permutation of degree d")
            if any(x <= self.p for x in self.omega.support()):
                raise InvariantViolation(f"omega {self.omega} moves points of {{1..{self.p}}}")
        else:
            if self.gamma is None or self.gamma.degree != self.d:
                raise InvariantViolation("gamma must be a permutation of degree d")
            if self.gamma.order() % self.p == 0:
                raise InvariantViolation(f"tame generator {self.gamma} has order divisible by {self.p}")

    @classmethod
    def wild(cls, p, d, theta_exp=0, omega=None):
        omega = omega if omega is not None else Perm.identity(d)
        return cls(p, d, ShapeKind.WILD, theta_exp % (p - 1), omega, None)

    @classmethod
    def tame(cls, p, d, gamma):
        return cls(p, d, ShapeKind.TAME, 0, None, gamma)

    @property
    def is_wild(self):
        return self.kind is ShapeKind.WILD

    @property
    def generator(self):
        """The tame generator: theta^i * omega for wild shapes, gamma for tame ones."""
        if self.is_wild:
            return make_theta(self.p, self.d) ** self.theta_exp * self.omega
        return self.gamma

    @property
    def tame_order(self):
        return self.generator.order()

    @property
    def expected_order(self):
        if self.is_wild:
            theta_order = (self.p - 1) // math.gcd(self.theta_exp, self.p - 1)
            return self.p * math.lcm(theta_order, self.omega.order())
        return self.gamma.order()

    def generators(self):
        if self.is_wild:
            return [make_tau(self.p, self.d), self.generator]
        return [self.gamma]

    def support(self):
        if self.is_wild:
            return tuple(range(1, self.p + 1)) + self.omega.support()
        return self.gamma.support()

    def fixed_points(self):
        moved = set(self.support())
        return tuple(x for x in range(1, self.d + 1) if x not in moved)

    def __str__(self):
        if self.is_wild:
            return f"wild p={self.p} d={self.d} i={self.theta_exp} omega={self.omega}"
        return f"tame p={self.p} d={self.d} gamma={self.gamma}"

    @classmethod
    def parse(cls, text, p=None, d=None):
        """
        Parses the textual shape format.

        ``wild p=5 d=8 i=2 omega=(6 7 8)`` and ``tame p=5 d=5 gamma=(1 2)(3 4)``;
        p and d may be omitted from the text when passed as arguments.

        Raises:
            ParseError: If the text is malformed.
        """
        match = re.match(r"^\s*(wild|tame)\s+(.*)$", text)
        if not match:
            raise ParseError(f"not an inertia shape: {text!r}")
        kind, rest = match.groups()
        fields = dict(re.findall(r"(\w+)=(\([^=]*\)|\S+)", rest))
        try:
            p = int(fields.get("p", p))
            d = int(fields.get("d", d))
            if kind == "wild":
                omega = Perm.parse(fields.get("omega", "()"), d)
                return cls.wild(p, d, int(fields.get("i", 0)), omega)
            return cls.tame(p, d, Perm.parse(fields["gamma"], d))
        except (KeyError, TypeError, ValueError, InvariantViolation) as e:
            raise ParseError(f"not an inertia shape: {text!r} ({e})") from e


def shape_key(shape):
    """Invariant comparing shapes up to the reductions used throughout."""
    if shape.is_wild:
        g = math.gcd(shape.theta_exp, shape.p - 1) % (shape.p - 1)
        return (shape.p, shape.d, ShapeKind.WILD.value, g, shape.omega.cycle_type())
    return (shape.p, shape.d, ShapeKind.TAME.value, 0, shape.gamma.cycle_type())


def realize(shape, settings=None):
    """
    The permutation group of a shape, with its order checked.

    Raises:
        InvariantViolation: If the computed order differs from the formula.
    """
    group = PermGroup(shape.d, shape.generators(), settings)
    order = group.order()
    if order != shape.expected_order:
        raise InvariantViolation(f"{shape} realizes a group of order {order}, expected {shape.expected_order}")
    return group


def canonicalize(shape, settings=None):
    """
    Rewrites a wild shape so theta_exp divides p - 1 (0 standing for p - 1).

    theta^i omega is replaced by its power with exponent k, where
    i*k = gcd(i, p-1) mod p-1 and k is prime to the tame order.

    Raises:
        InvariantViolation: For tame shapes, or if the groups differ.
    """
    if not shape.is_wild:
        raise InvariantViolation("only wild shapes have a canonical theta exponent")
    i, p = shape.theta_exp, shape.p
    if i == 0:
        return shape
    g = math.gcd(i, p - 1)
    modulus = (p - 1) // g
    k0 = pow(i // g, -1, modulus) if modulus > 1 else 1
    order = shape.tame_order
    k = next(k0 + j * modulus for j in range(order + 1) if math.gcd(k0 + j * modulus, order) == 1)
    result = InertiaShape.wild(p, shape.d, g, shape.omega ** k)
    if not realize(result, settings).same_group(realize(shape, settings)):
        raise InvariantViolation(f"canonical form of {shape} generates a different group")
    return result


@dataclass(frozen=True)
class RamificationProfile:
    """Ramification indices over a branch point, in decreasing order."""

    indices: tuple

    @classmethod
    def of(cls, indices):
        return cls(tuple(sorted(indices, reverse=True)))

    @property
    def total(self):
        return sum(self.indices)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.indices) + ")"


def fibre_profile(shape, d=None):
    """Orbit lengths of the realized group on {1..d}."""
    if d is not None and d != shape.d:
        shape = embed_shape(shape, d)
    group = PermGroup(shape.d, shape.generators())
    return RamificationProfile.of(len(orbit) for orbit in group.orbits())


def embed_shape(shape, d_new, settings=None):
    """
    The same shape viewed in S_{d_new}.

    Raises:
        BadRange: If d_new is smaller than d or above the degree budget.
    """
    settings = settings or DEFAULT_SETTINGS
    if d_new < shape.d or d_new > settings.degree_budget:
        raise BadRange(f"cannot embed degree {shape.d} into {d_new}")
    if shape.is_wild:
        return InertiaShape.wild(shape.p, d_new, shape.theta_exp, shape.omega.extend(d_new))
    return InertiaShape.tame(shape.p, d_new, shape.gamma.extend(d_new))


@lru_cache(maxsize=None)
def alternating_obligation(p, d):
    """Whether the normal closure of tau in A_d is A_d."""
    closure = normal_closure(PermGroup.alternating(d), [make_tau(p, d)])
    return closure.order() * 2 == math.factorial(d)


@lru_cache(maxsize=None)
def symmetric_obligation(d):
    """Whether [S_d, S_d] = A_d, i.e. S_d has no quotient of odd order > 1."""
    S = PermGroup.symmetric(d)
    a, b = S.generators
    derived = normal_closure(S, [a.commutator(b)])
    return derived.order() * 2 == math.factorial(d)


@dataclass(frozen=True)
class KummerResult:
    """
    Effect of pulling a two-point cover back along the [n]-Kummer cover.

    Attributes:
        n (int): Kummer exponent.
        over0 (int | Perm): New tame datum over 0 (order, or generator).
        over0_order (int): Order of the new tame inertia over 0; 1 means étale.
        shape (InertiaShape): New inertia over infinity.
        group (GroupClass): Claimed Galois group of the pullback.
        obligation (str): Group-theoretic fact the claim depends on.
        obligation_holds (bool): Whether that fact was verified.
    """

    n: int
    over0: object
    over0_order: int
    shape: InertiaShape
    group: GroupClass
    obligation: str
    obligation_holds: bool


def kummer_pullback(over0, shape, n, group):
    """
    Pulls back along the [n]-Kummer cover, totally ramified over 0 and infinity.

    The pullback's group is the kernel of the largest quotient G shares with
    Z/n. For S_d (d >= 5) the only nontrivial quotient is the sign, which Z/n
    lacks when n is odd, so S_d stays S_d; this is the step behind the odd
    [i]-pullbacks of the S_p, S_{p+2} and S_{p+3} routes. An even n can
    absorb the sign cover, and the result is A_d once both tame generators
    are even.

    Args:
        over0 (int | Perm): Tame inertia over 0, as its order or a generator.
        shape (InertiaShape): Wild inertia over infinity.
        n (int): Kummer exponent, prime to p.
        group (GroupClass | PermGroup): Galois group before the pullback.

    Returns:
        KummerResult: The transformed data and the new group claim.

    Raises:
        NotCoprime: If p divides n.
        Unsupported: For group transitions outside the supported patterns.
    """
    p, d = shape.p, shape.d
    if math.gcd(n, p) != 1:
        raise NotCoprime(f"Kummer exponent {n} is divisible by {p}")
    if isinstance(group, PermGroup):
        group = classify_alt_sym(group)
    if isinstance(over0, Perm):
        new_over0 = over0 ** math.gcd(n, over0.order())
        over0_order = new_over0.order()
        over0_parity_even = new_over0.is_even()
    else:
        over0_order = over0 // math.gcd(over0, n)
        new_over0 = over0_order
        over0_parity_even = over0_order == 1 or None
    sigma_order = shape.tame_order
    k = math.gcd(n, sigma_order)
    new_shape = InertiaShape.wild(p, d, shape.theta_exp * k, shape.omega ** k)

    if group is GroupClass.ALTERNATING:
        claim = GroupClass.ALTERNATING
        obligation = f"normal closure of tau in A_{d} is A_{d}"
        holds = alternating_obligation(p, d)
    elif group is GroupClass.SYMMETRIC and n % 2 == 1:
        claim = GroupClass.SYMMETRIC
        obligation = f"S_{d} has no nontrivial quotient of odd order"
        holds = symmetric_obligation(d)
    elif group is GroupClass.SYMMETRIC and new_shape.generator.is_even() and over0_parity_even:
        claim = GroupClass.ALTERNATING
        obligation = f"normal closure of tau in A_{d} is A_{d}"
        holds = alternating_obligation(p, d)
    else:
        raise Unsupported(f"no supported group transition for {group.value} under [{n}]")
    logger.debug("[%s]-Kummer: over 0 order %s, over infinity %s, group %s", n, over0_order, new_shape, claim.value)
    return KummerResult(n, new_over0, over0_order, new_shape, claim, obligation, holds)


class TargetStatus(str, Enum):
    MUST_REALIZE = "must-realize"
    REDUCIBLE = "reducible"
    DEFERRED = "deferred"


@dataclass
class TargetEntry:
    shape: InertiaShape
    status: TargetStatus
    reduced_from: InertiaShape | None = None
    kummer_exponent: int | None = None
    deferred_to: int | None = None

    def __str__(self):
        note = ""
        if self.status is TargetStatus.REDUCIBLE:
            note = f" from [{self.kummer_exponent}] of {self.reduced_from}"
        elif self.status is TargetStatus.DEFERRED:
            note = f" to degree {self.deferred_to}"
        return f"{self.shape}  [{self.status.value}{note}]"


@dataclass
class TargetList:
    """
    Inertia shapes a theorem for A_d or S_d has to realize.

    Attributes:
        d (int): Degree.
        p (int): Characteristic.
        group (GroupClass): ALTERNATING or SYMMETRIC.
        entries (list[TargetEntry]): One entry per shape, annotated.
    """

    d: int
    p: int
    group: GroupClass
    entries: list = field(default_factory=list)

    def must_realize(self):
        return [e for e in self.entries if e.status is TargetStatus.MUST_REALIZE]

    def shapes(self):
        return [e.shape for e in self.entries]

    def to_dataframe(self):
        rows = []
        for e in self.entries:
            rows.append(
                {
                    "shape": str(e.shape),
                    "theta_exp": e.shape.theta_exp,
                    "omega_type": ",".join(str(x) for x in e.shape.omega.cycle_type() if x > 1),
                    "status": e.status.value,
                    "reduced_from": str(e.reduced_from) if e.reduced_from else "",
                    "kummer_exponent": e.kummer_exponent or "",
                    "deferred_to": e.deferred_to or "",
                }
            )
        return pd.DataFrame(rows)

    def save_to_csv(self, directory="targets"):
        """
        Saves the annotated target list as CSV.

        Args:
            directory (str): Output directory, created when missing.

        Returns:
            str: Path of the written file.
        """
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, f"targets_{self.group.value}_d{self.d}_p{self.p}.csv")
        self.to_dataframe().to_csv(path, index=False)
        return path


def _omega_from_partition(p, d, parts):
    cycles = []
    start = p + 1
    for length in parts:
        if length > 1:
            cycles.append(range(start, start + length))
        start += length
    return Perm.from_cycles(cycles, d)


def enumerate_ic_targets(d, p, group=GroupClass.ALTERNATING, lower_ic=()):
    """
    Lists the shapes <tau> x| <theta^i omega> an IC statement for A_d or S_d
    must realize, with i | p-1 and omega up to cycle type.

    A shape is reducible when a group-preserving Kummer pullback of another
    listed shape produces it, deferred when it fixes at least two points and
    IC is available in degree |Supp| + 1, and must-realize otherwise.

    Args:
        d (int): Degree, p <= d <= 2p - 1.
        p (int): Odd prime.
        group (GroupClass): ALTERNATING (even generators) or SYMMETRIC (odd).
        lower_ic (Iterable[int]): Degrees where IC for A is already available.

    Returns:
        TargetList: The annotated shapes.

    Raises:
        BadRange: If d lies outside [p, 2p - 1].
    """
    if not isprime(p) or p < 3:
        raise InvariantViolation(f"p={p} is not an odd prime")
    if not p <= d <= 2 * p - 1:
        raise BadRange(f"d={d} outside [{p}, {2 * p - 1}]")
    want_even = group is GroupClass.ALTERNATING
    exponents = sorted({i % (p - 1) for i in divisors(p - 1)})
    tails = []
    for part in partitions(d - p):
        parts = sorted((k for k, mult in part.items() for _ in range(mult)), reverse=True)
        tails.append(tuple(parts))
    shapes = []
    for i in exponents:
        for parts in sorted(set(tails), reverse=True):
            shape = InertiaShape.wild(p, d, i, _omega_from_partition(p, d, parts))
            if shape.generator.is_even() == want_even:
                shapes.append(shape)
    keys = {shape_key(s): s for s in shapes}

    reductions = {}
    for source in sorted(shapes, key=lambda s: -s.tame_order):
        for c in divisors(source.tame_order):
            if c == 1 or (not want_even and c % 2 == 0):
                continue
            image = InertiaShape.wild(p, d, source.theta_exp * c, source.omega ** c)
            key = shape_key(image)
            if key != shape_key(source) and key in keys and key not in reductions:
                reductions[key] = (source, c)

    entries = []
    for shape in shapes:
        key = shape_key(shape)
        if key in reductions:
            source, c = reductions[key]
            entries.append(TargetEntry(shape, TargetStatus.REDUCIBLE, source, c))
            continue
        fixed = len(shape.fixed_points())
        lower = d - fixed + 1
        if want_even and fixed >= 2 and lower in lower_ic:
            entries.append(TargetEntry(shape, TargetStatus.DEFERRED, deferred_to=lower))
            continue
        entries.append(TargetEntry(shape, TargetStatus.MUST_REALIZE))
    logger.debug(
        "targets for %s d=%s p=%s: %s shapes, %s must-realize",
        group.value, d, p, len(entries), sum(e.status is TargetStatus.MUST_REALIZE for e in entries),
    )
    return TargetList(d, p, group, entries)


def alt_fp_parts(shape, d):
    """
    Subgroups Alt(Supp(I) ∪ {x}) of A_d, one per point x outside Supp(I).

    Together with I they generate A_d when I fixes a point; each pair
    (Alt(Supp(I) ∪ {x}), I) is realizable once IC holds in degree |Supp| + 1.

    Returns:
        list[tuple[PermGroup, PermGroup]]: The (G_x, I) pairs.
    """
    shape = embed_shape(shape, d) if shape.d != d else shape
    support = shape.support()
    inertia = PermGroup(d, shape.generators())
    return [(PermGroup.alternating_on(support + (x,), d), inertia) for x in shape.fixed_points()]


# Example usage:
# targets = enumerate_ic_targets(6, 5)
# for entry in targets.entries:
#     print(entry)
