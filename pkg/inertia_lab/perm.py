"""Permutations of {1..d} and the groups they generate.

Composition convention: ``a * b`` applies ``b`` first, then ``a``.
Conjugation ``a.conjugate(b)`` is ``b * a * b**-1``.

Group order and membership come from a deterministic Schreier-Sims
stabilizer chain with base points chosen in increasing order. The full
alternating and symmetric groups are built from explicit coset
representatives instead.
"""

import logging
import math
import random
from collections import namedtuple
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce

from sympy import divisors, factorint, isprime, primitive_root

from inertia_lab.config import DEFAULT_SETTINGS
from inertia_lab.errors import (
    BadDegree,
    DegreeBudgetExceeded,
    DegreeMismatch,
    InvariantViolation,
    NotAPGroup,
    NotASubgroupOfProduct,
    NotASubset,
    ParseError,
)

logger = logging.getLogger(__name__)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class Perm:
    """
    A permutation of {1..d}.

    Attributes:
        degree (int): d.
        images (tuple[int, ...]): images[i] is the image of point i + 1.
    """

    __slots__ = ("_img",)

    def __init__(self, images):
        img = tuple(int(x) - 1 for x in images)
        if sorted(img) != list(range(len(img))):
            raise InvariantViolation(f"not a permutation of 1..{len(img)}: {tuple(images)}")
        self._img = img

    @classmethod
    def _raw(cls, img):
        perm = cls.__new__(cls)
        perm._img = img
        return perm

    @classmethod
    def identity(cls, degree):
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """
        Builds a permutation from 1-indexed cycles.

        Args:
            cycles (Iterable[Sequence[int]]): Disjoint cycles.
            degree (int): d.

        Returns:
            Perm: The product of the cycles.
        """
        img = list(range(degree))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree or point in seen:
                    raise InvariantViolation(f"bad cycle {tuple(cycle)} for degree {degree}")
                seen.add(point)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @classmethod
    def parse(cls, text, degree):
        """Parses cycle notation such as ``(1 2 3)(4 5)``; ``()`` is the identity."""
        text = text.strip()
        if not text.startswith("(") or not text.endswith(")"):
            raise ParseError(f"not cycle notation: {text!r}")
        cycles = []
        for chunk in text[1:-1].split(")"):
            chunk = chunk.strip().lstrip("(").replace(",", " ")
            if not chunk:
                continue
            try:
                cycles.append([int(x) for x in chunk.split()])
            except ValueError as e:
                raise ParseError(f"not cycle notation: {text!r}") from e
        try:
            return cls.from_cycles(cycles, degree)
        except InvariantViolation as e:
            raise ParseError(str(e)) from e

    @property
    def degree(self):
        return len(self._img)

    @property
    def images(self):
        return tuple(x + 1 for x in self._img)

    def __call__(self, point):
        return self._img[point - 1] + 1

    def _check(self, other):
        if len(other._img) != len(self._img):
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")

    def __mul__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        self._check(other)
        a = self._img
        return Perm._raw(tuple(a[i] for i in other._img))

    def inverse(self):
        inv = [0] * len(self._img)
        for i, x in enumerate(self._img):
            inv[x] = i
        return Perm._raw(tuple(inv))

    __invert__ = inverse

    def __pow__(self, k):
        img = list(range(len(self._img)))
        for cycle in self._cycles0(include_fixed=False):
            n = len(cycle)
            shift = k % n
            for pos, point in enumerate(cycle):
                img[point] = cycle[(pos + shift) % n]
        return Perm._raw(tuple(img))

    def conjugate(self, by):
        """by * self * by^-1."""
        self._check(by)
        img = [0] * len(self._img)
        b = by._img
        for i, x in enumerate(self._img):
            img[b[i]] = b[x]
        return Perm._raw(tuple(img))

    def commutator(self, other):
        """self * other * self^-1 * other^-1."""
        return self * other * self.inverse() * other.inverse()

    def _cycles0(self, include_fixed):
        seen = [False] * len(self._img)
        cycles = []
        for start in range(len(self._img)):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self._img[x]
            if include_fixed or len(cycle) > 1:
                cycles.append(cycle)
        return cycles

    def cycles(self, include_fixed=False):
        return [tuple(x + 1 for x in c) for c in self._cycles0(include_fixed)]

    def cycle_type(self):
        """Cycle lengths in decreasing order, fixed points counted as 1s."""
        return tuple(sorted((len(c) for c in self._cycles0(True)), reverse=True))

    def parity(self):
        return Parity.EVEN if (self.degree - len(self._cycles0(True))) % 2 == 0 else Parity.ODD

    def is_even(self):
        return self.parity() is Parity.EVEN

    def order(self):
        return reduce(math.lcm, (len(c) for c in self._cycles0(True)), 1)

    def support(self):
        return tuple(i + 1 for i, x in enumerate(self._img) if i != x)

    def fixed_points(self):
        return tuple(i + 1 for i, x in enumerate(self._img) if i == x)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self._img))

    def extend(self, degree):
        """The same permutation on {1..degree}, fixing the new points."""
        if degree < self.degree:
            raise BadDegree(f"cannot shrink degree {self.degree} to {degree}")
        return Perm._raw(self._img + tuple(range(self.degree, degree)))

    def restrict(self, start, stop):
        """Action on the invariant block {start+1..stop}, renumbered from 1."""
        block = self._img[start:stop]
        if any(not start <= x < stop for x in block):
            raise InvariantViolation(f"points {start + 1}..{stop} are not an invariant block")
        return Perm._raw(tuple(x - start for x in block))

    @classmethod
    def direct_sum(cls, a, b):
        """a acting on {1..d_a}, b on {d_a+1..d_a+d_b}."""
        shift = a.degree
        return cls._raw(a._img + tuple(x + shift for x in b._img))

    def __eq__(self, other):
        return isinstance(other, Perm) and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __lt__(self, other):
        return self._img < other._img

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)

    def __repr__(self):
        return f"Perm({self}, degree={self.degree})"


def conjugating_element(a, b):
    """
    Returns c with a.conjugate(c) == b, or None when the cycle types differ.

    Cycles of equal length are paired in order of their smallest point.
    """
    a._check(b)
    if a.cycle_type() != b.cycle_type():
        return None
    by_length_a = sorted(a._cycles0(True), key=lambda c: (-len(c), min(c)))
    by_length_b = sorted(b._cycles0(True), key=lambda c: (-len(c), min(c)))
    img = [0] * a.degree
    for ca, cb in zip(by_length_a, by_length_b):
        for x, y in zip(ca, cb):
            img[x] = y
    return Perm._raw(tuple(img))


def make_tau(p, d):
    """The p-cycle (1 2 ... p) in S_d."""
    if p > d:
        raise BadDegree(f"p={p} exceeds degree {d}")
    return Perm.from_cycles([range(1, p + 1)], d)


def make_theta(p, d):
    """
    theta(x) = g*(x-1) mod p + 1 on {1..p}, g the smallest primitive root mod p.

    theta normalizes tau with theta*tau*theta^-1 = tau^g and has order p - 1.
    """
    if p > d:
        raise BadDegree(f"p={p} exceeds degree {d}")
    g = primitive_root(p)
    return Perm._raw(tuple(g * x % p for x in range(p)) + tuple(range(p, d)))


class _StabilizerChain:
    """
    A base and strong generating set, stored level by level.

    Points are 0-indexed. Level k holds the base point base[k], the strong
    generators fixing base[0..k-1] and a transversal mapping each orbit point
    beta to (u, u^-1) with u(base[k]) = beta.
    """

    def __init__(self, degree, base=()):
        self.degree = degree
        self.base = []
        self.gens = []
        self.transversals = []
        self._checked = []
        for point in base:
            self._add_level(point)

    def _add_level(self, point):
        self.base.append(point)
        self.gens.append([])
        identity = Perm.identity(self.degree)
        self.transversals.append({point: (identity, identity)})
        self._checked.append(set())

    def _orbit_transversal(self, level):
        beta = self.base[level]
        identity = Perm.identity(self.degree)
        transversal = {beta: (identity, identity)}
        queue = [beta]
        for x in queue:
            u = transversal[x][0]
            for s in self.gens[level]:
                y = s._img[x]
                if y not in transversal:
                    v = s * u
                    transversal[y] = (v, v.inverse())
                    queue.append(y)
        self.transversals[level] = transversal
        self._checked[level] = set()

    def strip(self, g, start=0):
        """Sifts g through levels start.. and returns (residue, level reached)."""
        for k in range(start, len(self.base)):
            beta = g._img[self.base[k]]
            entry = self.transversals[k].get(beta)
            if entry is None:
                return g, k
            g = entry[1] * g
        return g, len(self.base)

    def contains(self, g):
        h, _ = self.strip(g)
        return h.is_identity()

    def order(self):
        return math.prod(len(t) for t in self.transversals)

    def _insert(self, h, start, stop):
        """Adds h as a strong generator on levels start..stop, adding a base point if needed."""
        if stop == len(self.base):
            self._add_level(next(i for i, x in enumerate(h._img) if i != x))
        for level in range(start, stop + 1):
            self.gens[level].append(h)
            self._orbit_transversal(level)

    def adjoin(self, g):
        """
        Extends the group by g and restores the strong generating property.

        Returns:
            bool: False when g was already a member.
        """
        if self.contains(g):
            return False
        level = next((k for k, b in enumerate(self.base) if g._img[b] != b), len(self.base))
        self._insert(g, 0, level)
        self._complete(level)
        return True

    def _complete(self, level):
        i = level
        while i >= 0:
            restart = False
            transversal = self.transversals[i]
            checked = self._checked[i]
            for beta, (u_beta, _) in list(transversal.items()):
                for s in list(self.gens[i]):
                    if (beta, s) in checked:
                        continue
                    checked.add((beta, s))
                    y = s._img[beta]
                    schreier = transversal[y][1] * s * u_beta
                    h, j = self.strip(schreier, i + 1)
                    if j == len(self.base) and h.is_identity():
                        continue
                    logger.debug("Schreier-Sims: level %s, new strong generator down to level %s", i, j)
                    self._insert(h, i + 1, j)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1

    @classmethod
    def from_coset_representatives(cls, degree, base, strong_generators):
        """
        A chain whose correctness is known in advance: level k is generated by
        strong_generators[k] and every later level's generators.
        """
        chain = cls(degree, base)
        pooled = []
        for level in range(len(base) - 1, -1, -1):
            pooled = list(strong_generators[level]) + pooled
            chain.gens[level] = pooled
            chain._orbit_transversal(level)
        return chain


class PermGroup:
    """
    A subgroup of S_d given by generators.

    The stabilizer chain is computed on first use and cached.

    Attributes:
        degree (int): d.
        generators (tuple[Perm, ...]): Non-identity generators.
    """

    def __init__(self, degree, generators=(), settings=None, _chain_factory=None):
        generators = tuple(generators)
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = tuple(g for g in generators if not g.is_identity())
        self.settings = settings or DEFAULT_SETTINGS
        self._chain_factory = _chain_factory
        self._chain = None

    @classmethod
    def trivial(cls, degree):
        return cls(degree)

    @classmethod
    def symmetric(cls, degree):
        gens = []
        if degree >= 2:
            gens = [Perm.from_cycles([(1, 2)], degree), Perm.from_cycles([range(1, degree + 1)], degree)]

        def factory():
            base = list(range(degree - 1))
            reps = [[Perm.from_cycles([(k + 1, j + 1)], degree) for j in range(k + 1, degree)] for k in base]
            return _StabilizerChain.from_coset_representatives(degree, base, reps)

        return cls(degree, gens, _chain_factory=factory)

    @classmethod
    def alternating(cls, degree):
        return cls.alternating_on(range(1, degree + 1), degree)

    @classmethod
    def alternating_on(cls, points, degree):
        """
        Alt(points) inside S_degree.

        Args:
            points (Iterable[int]): 1-indexed points moved by the group.
            degree (int): d.

        Returns:
            PermGroup: The alternating group on the points, with a prebuilt chain.
        """
        points = sorted(points)
        n = len(points)
        if n < 3:
            return cls(degree)
        long_cycle = points if n % 2 else points[1:]
        gens = [Perm.from_cycles([points[:3]], degree)]
        if n > 3:
            gens.append(Perm.from_cycles([long_cycle], degree))

        def factory():
            base = [x - 1 for x in points[: n - 2]]
            reps = []
            for k in range(n - 2):
                level = []
                for j in range(k + 1, n):
                    m = n - 1 if j != n - 1 else n - 2
                    level.append(Perm.from_cycles([(points[k], points[j], points[m])], degree))
                reps.append(level)
            return _StabilizerChain.from_coset_representatives(degree, base, reps)

        return cls(degree, gens, _chain_factory=factory)

    @classmethod
    def _from_chain(cls, degree, generators, chain, settings=None):
        group = cls(degree, generators, settings)
        group._chain = chain
        return group

    @property
    def chain(self):
        if self._chain is None:
            if self.degree > self.settings.degree_budget:
                raise DegreeBudgetExceeded(
                    f"degree {self.degree} exceeds the budget {self.settings.degree_budget}"
                )
            if self._chain_factory is not None:
                self._chain = self._chain_factory()
            else:
                chain = _StabilizerChain(self.degree)
                for g in self.generators:
                    chain.adjoin(g)
                self._chain = chain
            logger.debug("stabilizer chain for degree %s: base length %s", self.degree, len(self._chain.base))
        return self._chain

    def order(self):
        return self.chain.order()

    def contains(self, g):
        if g.degree != self.degree:
            raise DegreeMismatch(f"{g} has degree {g.degree}, group degree is {self.degree}")
        return self.chain.contains(g)

    __contains__ = contains

    def is_trivial(self):
        return not self.generators

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self.generators)

    def same_group(self, other):
        """Group equality via order and generator membership."""
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def with_generators(self, extra):
        return PermGroup(self.degree, self.generators + tuple(extra), self.settings)

    def orbit(self, point):
        orbit = [point]
        seen = {point}
        for x in orbit:
            for g in self.generators:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
        return sorted(orbit)

    def orbits(self):
        seen = set()
        result = []
        for point in range(1, self.degree + 1):
            if point not in seen:
                orbit = self.orbit(point)
                seen.update(orbit)
                result.append(tuple(orbit))
        return result

    def is_transitive(self):
        return len(self.orbit(1)) == self.degree

    def minimal_block(self, a, b):
        """
        The smallest block containing a and b, by union-find closure.

        Returns:
            tuple[int, ...]: The block through a.
        """
        parent = list(range(self.degree + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx == ry:
                return False
            parent[max(rx, ry)] = min(rx, ry)
            return True

        union(a, b)
        queue = [(a, b)]
        for x, y in queue:
            for g in self.generators:
                gx, gy = g(x), g(y)
                if union(gx, gy):
                    queue.append((gx, gy))
        root = find(a)
        return tuple(x for x in range(1, self.degree + 1) if find(x) == root)

    def is_primitive(self):
        if not self.is_transitive():
            return False
        return all(len(self.minimal_block(1, b)) == self.degree for b in range(2, self.degree + 1))

    def random_element(self, rng):
        """A uniformly random element, one random coset representative per level."""
        g = Perm.identity(self.degree)
        for transversal in self.chain.transversals:
            key = rng.choice(sorted(transversal))
            g = g * transversal[key][0]
        return g

    def pointwise_stabilizer(self, points):
        """The subgroup fixing every point of ``points`` (1-indexed)."""
        chain = _StabilizerChain(self.degree, [x - 1 for x in points])
        for g in self.generators:
            chain.adjoin(g)
        depth = len(points)
        if depth >= len(chain.base):
            return PermGroup(self.degree, settings=self.settings)
        stabilizer = _StabilizerChain(self.degree)
        stabilizer.base = chain.base[depth:]
        stabilizer.gens = chain.gens[depth:]
        stabilizer.transversals = chain.transversals[depth:]
        stabilizer._checked = chain._checked[depth:]
        return PermGroup._from_chain(self.degree, chain.gens[depth], stabilizer, self.settings)

    def elements(self):
        """Every element by closure under the generators; for small groups only."""
        identity = Perm.identity(self.degree)
        seen = {identity}
        queue = [identity]
        for x in queue:
            for g in self.generators:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, generators=[{gens}])"


BSGS = namedtuple("BSGS", ["order", "contains", "base", "strong_generators"])


def bsgs(G):
    """
    Order and membership test of G from its stabilizer chain.

    Raises:
        DegreeBudgetExceeded: If the degree exceeds the configured budget.
    """
    chain = G.chain
    strong = tuple(dict.fromkeys(g for level in chain.gens for g in level))
    return BSGS(chain.order(), G.contains, tuple(b + 1 for b in chain.base), strong)


def is_transitive(G):
    return G.is_transitive()


def is_primitive(G):
    return G.is_primitive()


def normal_closure(G, S):
    """
    The smallest normal subgroup of G containing S.

    Args:
        G (PermGroup): Ambient group.
        S (Iterable[Perm]): Seed elements, each a member of G.

    Returns:
        PermGroup: The normal closure, with its chain attached.

    Raises:
        NotASubset: If some seed is not in G.
    """
    seeds = [s for s in S if not s.is_identity()]
    for s in seeds:
        if not G.contains(s):
            raise NotASubset(f"{s} is not an element of the ambient group")
    if G.degree > G.settings.degree_budget:
        raise DegreeBudgetExceeded(f"degree {G.degree} exceeds the budget {G.settings.degree_budget}")
    chain = _StabilizerChain(G.degree)
    generators = []
    queue = []
    for s in seeds:
        if chain.adjoin(s):
            generators.append(s)
            queue.append(s)
    for n in queue:
        for g in G.generators:
            c = n.conjugate(g)
            if chain.adjoin(c):
                generators.append(c)
                queue.append(c)
    logger.debug("normal closure of %s seeds: order %s", len(seeds), chain.order())
    return PermGroup._from_chain(G.degree, generators, chain, G.settings)


class GroupClass(str, Enum):
    ALTERNATING = "Alternating"
    SYMMETRIC = "Symmetric"
    OTHER = "Other"


def classify_alt_sym(G):
    """Decides whether G is A_d, S_d or neither by exact order comparison."""
    order = G.order()
    full = math.factorial(G.degree)
    if order == full:
        return GroupClass.SYMMETRIC
    if G.degree >= 2 and order * 2 == full:
        return GroupClass.ALTERNATING
    return GroupClass.OTHER


def is_prime_power(q):
    return q > 1 and len(factorint(q)) == 1


def is_projective_prime(p):
    """True iff p = (q^n - 1)/(q - 1) for a prime power q and n >= 2."""
    for q in range(2, p):
        if not is_prime_power(q):
            continue
        total = 1 + q
        while total < p:
            total = total * q + 1
        if total == p:
            return True
    return False


def theta_power_cycle_types(p):
    """Cycle types of theta^i on p points, one per divisor k of p - 1."""
    return {tuple([k] * ((p - 1) // k) + [1]) for k in divisors(p - 1)}


class JonesVerdict(str, Enum):
    CONTAINS_ALT = "ContainsAlt"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class JonesResult:
    verdict: JonesVerdict
    clause: str | None = None
    witness_power: int | None = None

    @property
    def contains_alt(self):
        return self.verdict is JonesVerdict.CONTAINS_ALT


def jones_criterion(d, p, gamma, t):
    """
    Sufficient conditions for a primitive group of degree d containing a
    p-cycle fixing d - p points and the tame generator gamma to contain A_d.

    Every clause is an instance of Jones's classification of primitive
    groups containing a cycle (Theorem 1.2 there); a clause fires only
    when the data rules out every exceptional family:

    - ``cycle-power``: some power of gamma is one cycle fixing >= 3 points.
    - ``t-range``: d > p and the p-cycle fixes t points, 3 <= t <= p - 1.
    - ``prime-degree``: the degree-p case. The exceptions there are the
      affine groups, whose tame elements are conjugate to powers of theta,
      PGL_k(q) in degree (q^k - 1)/(q - 1) and the Mathieu groups in
      degrees 11 and 23.
    - ``p-plus-two``: d = p + 2 with gamma a (p+1)-cycle fixing one point,
      as in the two S_{p+2} routes. The classification excludes p = l + 1
      for a prime l >= 5, which no odd p meets; the guard is kept literal.

    Args:
        d (int): Degree.
        p (int): Characteristic.
        gamma (Perm): Tame inertia generator over 0.
        t (int): d - p.

    Returns:
        JonesResult: The verdict and the clause that fired.
    """
    for j in divisors(gamma.order()):
        power = gamma ** j
        cycles = power.cycles()
        if len(cycles) == 1 and d - len(cycles[0]) >= 3:
            return JonesResult(JonesVerdict.CONTAINS_ALT, "cycle-power", j)
    if d > p and 3 <= t <= p - 1:
        return JonesResult(JonesVerdict.CONTAINS_ALT, "t-range")
    if (
        d == p
        and p not in (11, 23)
        and not is_projective_prime(p)
        and gamma.cycle_type() not in theta_power_cycle_types(p)
    ):
        return JonesResult(JonesVerdict.CONTAINS_ALT, "prime-degree")
    if d == p + 2 and gamma.cycle_type() == (p + 1, 1):
        if not (p - 1 >= 5 and isprime(p - 1)):
            return JonesResult(JonesVerdict.CONTAINS_ALT, "p-plus-two")
    return JonesResult(JonesVerdict.INCONCLUSIVE)


def direct_product(G1, G2):
    """G1 x G2 acting on the disjoint union of the two domains."""
    id1 = Perm.identity(G1.degree)
    id2 = Perm.identity(G2.degree)
    gens = [Perm.direct_sum(g, id2) for g in G1.generators] + [Perm.direct_sum(id1, h) for h in G2.generators]
    return PermGroup(G1.degree + G2.degree, gens, G1.settings)


def _p_log(order, p):
    k = 0
    while order % p == 0:
        order //= p
        k += 1
    return k, order


@dataclass(frozen=True)
class FrattiniResult:
    """
    G/Phi(G) for a p-group G together with the images of given subgroups.

    Attributes:
        rank: Dimension of G/Phi(G) over F_p.
        phi_order: |Phi(G)|.
        image_ranks: Rank of each subgroup's image.
        joint_rank: Rank of the image of the subgroup they generate together.
        normal_generation: Whether the normal closures of the subgroups generate G.
        direct_generation: Whether the subgroups themselves generate G.
    """

    p: int
    order: int
    rank: int
    phi_order: int
    image_ranks: tuple
    joint_rank: int
    normal_generation: bool
    direct_generation: bool

    @property
    def lemma_holds(self):
        return self.direct_generation or not self.normal_generation


def frattini_quotient(G, p, subgroups=()):
    """
    Computes G/Phi(G) for a p-group G and checks that subgroups whose normal
    closures generate G already generate G.

    Raises:
        NotAPGroup: If |G| is not a power of p.
    """
    order = G.order()
    _, rest = _p_log(order, p)
    if rest != 1:
        raise NotAPGroup(f"|G| = {order} is not a power of {p}")
    gens = G.generators
    seeds = [g ** p for g in gens] + [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    phi = normal_closure(G, seeds)
    phi_order = phi.order()
    rank, _ = _p_log(order // phi_order, p)

    def image_rank(groups):
        extra = [g for H in groups for g in H.generators]
        return _p_log(phi.with_generators(extra).order() // phi_order, p)[0]

    image_ranks = tuple(image_rank([H]) for H in subgroups)
    joint_rank = image_rank(subgroups)
    all_gens = [g for H in subgroups for g in H.generators]
    normal_generation = normal_closure(G, all_gens).order() == order
    direct_generation = PermGroup(G.degree, all_gens, G.settings).order() == order
    return FrattiniResult(p, order, rank, phi_order, image_ranks, joint_rank, normal_generation, direct_generation)


@dataclass
class GoursatResult:
    """
    Goursat data of P <= G1 x G2.

    Attributes:
        pi1, pi2: Projections of P.
        N1, N2: Kernels P ∩ G1 and P ∩ G2, viewed in G1 and G2.
        quotient_order: |pi1/N1| = |pi2/N2|.
        graph: Pairs (pi1(g), pi2(g)) for the generators g of P; they define
            the isomorphism pi1/N1 -> pi2/N2.
    """

    pi1: PermGroup
    pi2: PermGroup
    N1: PermGroup
    N2: PermGroup
    quotient_order: int
    graph: list = field(default_factory=list)

    def reconstruct(self):
        """The subgroup of G1 x G2 determined by the Goursat data."""
        d1, d2 = self.pi1.degree, self.pi2.degree
        id1, id2 = Perm.identity(d1), Perm.identity(d2)
        gens = (
            [Perm.direct_sum(n, id2) for n in self.N1.generators]
            + [Perm.direct_sum(id1, n) for n in self.N2.generators]
            + [Perm.direct_sum(a, b) for a, b in self.graph]
        )
        return PermGroup(d1 + d2, gens, self.pi1.settings)


def goursat_decompose(G1, G2, P):
    """
    Projections, kernels and common quotient of P <= G1 x G2.

    Raises:
        NotASubgroupOfProduct: If P does not lie in G1 x G2.
    """
    d1, d2 = G1.degree, G2.degree
    if P.degree != d1 + d2:
        raise NotASubgroupOfProduct(f"degree {P.degree} is not {d1} + {d2}")
    graph = []
    for g in P.generators:
        try:
            a, b = g.restrict(0, d1), g.restrict(d1, d1 + d2)
        except InvariantViolation as e:
            raise NotASubgroupOfProduct(str(e)) from e
        if not (G1.contains(a) and G2.contains(b)):
            raise NotASubgroupOfProduct(f"{g} is not in the product")
        graph.append((a, b))
    pi1 = PermGroup(d1, [a for a, _ in graph], G1.settings)
    pi2 = PermGroup(d2, [b for _, b in graph], G2.settings)
    kernel2 = P.pointwise_stabilizer(range(d1 + 1, d1 + d2 + 1))
    kernel1 = P.pointwise_stabilizer(range(1, d1 + 1))
    N1 = PermGroup(d1, [g.restrict(0, d1) for g in kernel2.generators], G1.settings)
    N2 = PermGroup(d2, [g.restrict(d1, d1 + d2) for g in kernel1.generators], G2.settings)
    q1 = pi1.order() // N1.order()
    q2 = pi2.order() // N2.order()
    if q1 != q2:
        raise InvariantViolation(f"Goursat quotients differ: {q1} != {q2}")
    return GoursatResult(pi1, pi2, N1, N2, q1, graph)


class Certainty(str, Enum):
    PROVED = "proved"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class PPartResult:
    subgroup: PermGroup
    certainty: Certainty
    samples: int
    seed: int


def p_part_subgroup(G, p, settings=None):
    """
    The subgroup generated by the p-elements of G, found by sampling.

    p-parts of the generators and of a fixed schedule of seeded random
    elements are closed normally in G. The answer is proved when it equals
    G, or when the Sylow p-subgroup has order at most p.

    Args:
        G (PermGroup): The group.
        p (int): Prime.
        settings (Settings | None): Sample count and seed.

    Returns:
        PPartResult: The subgroup and how certain it is.
    """
    settings = settings or G.settings
    rng = random.Random(settings.seed)
    candidates = list(G.generators) + [G.random_element(rng) for _ in range(settings.p_part_samples)]
    p_elements = []
    for g in candidates:
        order = g.order()
        k, rest = _p_log(order, p)
        if k:
            p_elements.append(g ** rest)
    closure = normal_closure(G, p_elements)
    valuation, _ = _p_log(G.order(), p)
    if closure.order() == G.order() or valuation == 0 or (valuation == 1 and p_elements):
        certainty = Certainty.PROVED
    else:
        certainty = Certainty.SAMPLED
    logger.debug("p-part for p=%s: order %s, %s", p, closure.order(), certainty.value)
    return PPartResult(closure, certainty, settings.p_part_samples, settings.seed)


# Example usage:
# G = PermGroup(7, [Perm.parse("(1 2 3)", 7), Perm.parse("(1 2 3 4 5 6 7)", 7)])
# print(G.order(), classify_alt_sym(G))
