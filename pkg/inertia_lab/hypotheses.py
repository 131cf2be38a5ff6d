"""Group-theoretic hypotheses of the patching results and their checks.

The covers whose existence these hypotheses feed are never constructed
here; certificates cite them from ``certificate.AXIOMS``.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import divisors, isprime, multiplicity

from inertia_lab.certificate import Certificate, StepKind
from inertia_lab.errors import DegreeMismatch, InvariantViolation, NotASubgroup, ScopeExceeded
from inertia_lab.perm import (
    Perm,
    PermGroup,
    conjugating_element,
    direct_product,
    frattini_quotient,
    goursat_decompose,
    make_tau,
    normal_closure,
    p_part_subgroup,
)

logger = logging.getLogger(__name__)


@dataclass
class ReductionSeries:
    """
    H_0 = G and H_{j+1} = <P_i^{H_j}> until the series stabilizes.

    Attributes:
        groups (list[PermGroup]): H_0, ..., H_l.
        length (int): l, the first index with H_{l+1} = H_l.
        gic_holds (bool): Whether G = H_1 = <P_1^G, ..., P_r^G>.
        normal_checked (bool): Whether each H_{j+1} was verified normal in H_j.
    """

    groups: list
    length: int
    gic_holds: bool
    normal_checked: bool

    def orders(self):
        return [H.order() for H in self.groups]


def _is_normal(N, G):
    return all(G.contains(n) for n in N.generators) and all(
        N.contains(n.conjugate(g)) for n in N.generators for g in G.generators
    )


def compute_h_series(G, Ps):
    """
    Iterated normal closures of the P_i, stopping once the order stabilizes.

    Args:
        G (PermGroup): Ambient group.
        Ps (list[PermGroup]): Subgroups P_i of G.

    Returns:
        ReductionSeries: The series and whether the GIC hypothesis holds.

    Raises:
        NotASubgroup: If some P_i is not contained in G.
    """
    for P in Ps:
        if P.degree != G.degree:
            raise DegreeMismatch(f"subgroup of degree {P.degree} in a group of degree {G.degree}")
        if not P.is_subgroup_of(G):
            raise NotASubgroup(f"{P} is not a subgroup of {G}")
    seeds = [g for P in Ps for g in P.generators]
    groups = [G]
    normal = True
    while True:
        H = normal_closure(groups[-1], seeds)
        normal = normal and _is_normal(H, groups[-1])
        if H.order() == groups[-1].order():
            break
        groups.append(H)
    gic = len(groups) == 1
    logger.debug("H-series orders %s", [H.order() for H in groups])
    return ReductionSeries(groups, len(groups) - 1, gic, normal)


@dataclass
class PatchVerdict:
    """
    Outcome of check_patch_hypotheses.

    Attributes:
        holds (bool): Every checked condition holds.
        generated (bool): G = <G_1, ..., G_n, I>.
        tame_orders (list[int]): |I_i / p(I_i)| per part.
        tame_ok (bool): All tame orders equal m.
        shared_ok (bool | None): The shared-element condition, when requested.
        reasons (list[str]): Failed conditions.
    """

    holds: bool
    generated: bool
    tame_orders: list
    tame_ok: bool
    shared_ok: bool | None = None
    reasons: list = field(default_factory=list)


def check_patch_hypotheses(G, parts, I=None, m=None, p=None, shared=None, settings=None):
    """
    Checks the finite hypotheses of the patching results.

    Args:
        G (PermGroup): Target group.
        parts (list[tuple[PermGroup, PermGroup]]): Pairs (G_i, I_i) with I_i <= G_i <= G.
        I (PermGroup | None): Inertia group joined to the generation check.
        m (int | None): Required tame order; defaults to the first part's.
        p (int): Characteristic.
        shared (Perm | None): Element of prime-to-p order that must lie in every G_i.
        settings (Settings | None): Sampling parameters for p_part_subgroup.

    Returns:
        PatchVerdict: The verdict and failed conditions.

    Raises:
        NotASubgroup: If some I_i is not in G_i or some G_i is not in G.
        DegreeMismatch: If the groups do not share a degree.
    """
    if p is None or not isprime(p):
        raise InvariantViolation(f"a prime characteristic is required, got {p!r}")
    groups = [G] + [H for pair in parts for H in pair] + ([I] if I is not None else [])
    if any(H.degree != G.degree for H in groups):
        raise DegreeMismatch("patching data must share one degree")
    for Gi, Ii in parts:
        if not Gi.is_subgroup_of(G):
            raise NotASubgroup(f"{Gi} is not contained in the target group")
        if not Ii.is_subgroup_of(Gi):
            raise NotASubgroup(f"{Ii} is not contained in {Gi}")
    reasons = []
    gens = [g for Gi, _ in parts for g in Gi.generators] + (list(I.generators) if I is not None else [])
    generated = PermGroup(G.degree, gens, G.settings).order() == G.order()
    if not generated:
        reasons.append("the parts do not generate G")
    tame_orders = []
    for _, Ii in parts:
        wild = p_part_subgroup(Ii, p, settings).subgroup
        tame_orders.append(Ii.order() // wild.order())
    expected = m if m is not None else (tame_orders[0] if tame_orders else None)
    tame_ok = all(k == expected for k in tame_orders)
    if not tame_ok:
        reasons.append(f"tame orders {tame_orders} differ from m={expected}")
    shared_ok = None
    if shared is not None:
        shared_ok = math.gcd(shared.order(), p) == 1 and all(Gi.contains(shared) for Gi, _ in parts)
        if not shared_ok:
            reasons.append(f"{shared} is not a shared element of prime-to-p order")
    holds = generated and tame_ok and shared_ok is not False
    return PatchVerdict(holds, generated, tame_orders, tame_ok, shared_ok, reasons)


def riemann_hurwitz_genus(base_genus, degree, ramification):
    """
    Genus of a Galois cover from Riemann-Hurwitz, tame ramification only.

    Args:
        base_genus (int): Genus of the base curve.
        degree (int): Degree of the Galois cover.
        ramification (Iterable[int]): Ramification index over each branch point.

    Returns:
        Fraction: The genus; non-integral or negative values mean no such cover.
    """
    total = Fraction(degree * (2 * base_genus - 2))
    for e in ramification:
        total += Fraction(degree, e) * (e - 1)
    return total / 2 + 1


def kummer_index_pairs(n):
    """Divisor pairs (m1, m2) of n with an integral genus >= 0 for a Z/n cover branched at two points."""
    return [
        (m1, m2)
        for m1 in divisors(n)
        for m2 in divisors(n)
        if (g := riemann_hurwitz_genus(0, n, [m1, m2])).denominator == 1 and g >= 0
    ]


def _sylow_valuation(G, p):
    return multiplicity(p, G.order())


def _even_conjugator(a, b, centralizer_odd=None):
    """An even x with a.conjugate(x) == b, or None."""
    x = conjugating_element(a, b)
    if x is None:
        return None
    if x.is_even():
        return x
    if centralizer_odd is not None:
        return centralizer_odd * x
    return None


def _conjugate_cyclic_in_alternating(a, b):
    """Whether <a> and <b> are conjugate by an even permutation."""
    n = a.order()
    return any(
        (x := conjugating_element(a, b ** k)) is not None and x.is_even()
        for k in range(1, n)
        if math.gcd(k, n) == 1
    )


def _p_group_instance(cert, p, d=None, settings=None):
    a = Perm.from_cycles([range(1, p + 1)], 2 * p)
    b = Perm.from_cycles([range(p + 1, 2 * p + 1)], 2 * p)
    G = PermGroup(2 * p, [a, b], settings)
    Ps = [PermGroup(2 * p, [a], settings), PermGroup(2 * p, [b], settings)]
    result = frattini_quotient(G, p, Ps)
    cert.add(
        StepKind.GROUP_COMPUTATION, f"G = Z/{p} x Z/{p} is a p-group of order {p * p}",
        result.order == p * p, order=result.order, generators=[str(a), str(b)],
    )
    cert.add(
        StepKind.GROUP_COMPUTATION, "the normal closures of the P_i generate G",
        result.normal_generation, subgroups=[str(a), str(b)],
    )
    cert.add(
        StepKind.GROUP_COMPUTATION, "the P_i themselves generate G through the Frattini quotient",
        result.direct_generation and result.joint_rank == result.rank,
        rank=result.rank, phi_order=result.phi_order, image_ranks=result.image_ranks,
        joint_rank=result.joint_rank,
    )
    cert.cite("p-group-gpwic", "purely wild inertia holds for G with P_1, P_2")


def _strictly_divisible_instance(cert, p, d=None, settings=None):
    d = d or p
    G = PermGroup.alternating(d)
    tau = make_tau(p, d)
    order = G.order()
    cert.add(
        StepKind.GROUP_COMPUTATION, f"p={p} divides |A_{d}| = {order} exactly once",
        _sylow_valuation(G, p) == 1, order=order,
    )
    cert.add(StepKind.GROUP_COMPUTATION, f"<{tau}> is a Sylow {p}-subgroup", p == p ** _sylow_valuation(G, p))
    cert.add(
        StepKind.GROUP_COMPUTATION, f"A_{d} is quasi-p: the normal closure of <tau> is A_{d}",
        normal_closure(G, [tau]).order() == order,
    )
    cert.cite("raynaud-quasi-p", f"(A_{d}, <tau>) is realizable")
    cert.cite("strictly-divisible-gpwic", f"purely wild inertia holds for A_{d}")


def _product_small_order_instance(cert, p, d=None, settings=None):
    G1, G2 = PermGroup.alternating(p), PermGroup.alternating(p + 1)
    G = direct_product(G1, G2)
    t1, t2 = make_tau(p, p), make_tau(p, p + 1)
    diagonal = Perm.direct_sum(t1, t2)
    for name, H, tau in ((f"A_{p}", G1, t1), (f"A_{p + 1}", G2, t2)):
        cert.add(
            StepKind.GROUP_COMPUTATION, f"|{name}| is strictly divisible by {p}",
            _sylow_valuation(H, p) == 1, order=H.order(),
        )
        cert.add(
            StepKind.GROUP_COMPUTATION, f"the projection <{tau}> normally generates {name}",
            normal_closure(H, [tau]).order() == H.order(),
        )
    cert.add(
        StepKind.GROUP_COMPUTATION, f"G = A_{p} x A_{p + 1} is the normal closure of P = <{diagonal}>",
        normal_closure(G, [diagonal]).order() == G.order(), order=G.order(),
    )
    cert.cite("product-small-order-gpwic", f"purely wild inertia holds for A_{p} x A_{p + 1}")


def _product_arbitrary_instance(cert, p, d=None, settings=None):
    G1 = PermGroup.alternating(p)
    c = make_tau(p, p)
    G2 = PermGroup(p, [c])
    tau = make_tau(p, p)
    P = PermGroup(2 * p, [Perm.direct_sum(tau, c)])
    goursat = goursat_decompose(G1, G2, P)
    cert.add(
        StepKind.GROUP_COMPUTATION, f"A_{p} is quasi-p", normal_closure(G1, [tau]).order() == G1.order(),
    )
    cert.add(StepKind.GROUP_COMPUTATION, f"Z/{p} is a p-group", G2.order() == p)
    cert.add(
        StepKind.GROUP_COMPUTATION, "Goursat data of P reconstruct P",
        goursat.reconstruct().same_group(P),
        quotient_order=goursat.quotient_order, kernel_orders=[goursat.N1.order(), goursat.N2.order()],
    )
    cert.cite("no-common-quotient-simple", f"A_{p} and Z/{p} have no nontrivial common quotient", pair=[f"A_{p}", f"Z/{p}"])
    cert.cite("product-no-common-quotient", f"purely wild inertia holds for A_{p} x Z/{p}")


def _weaker_inertia_instance(cert, p, d=None, settings=None):
    d = d or p + 1
    G = PermGroup.alternating(d)
    valuation = _sylow_valuation(G, p)
    if valuation > 1:
        raise ScopeExceeded(f"the Sylow {p}-subgroup of A_{d} has order {p ** valuation}; only order p is supported")
    tau = make_tau(p, d)
    H = normal_closure(G, [tau])
    cert.add(StepKind.GROUP_COMPUTATION, f"H = <P^G> = A_{d}", H.order() == G.order(), order=H.order())
    cert.add(
        StepKind.GROUP_COMPUTATION, f"Q = <{tau}> is a Sylow {p}-subgroup of H containing P",
        valuation == 1, sylow_order=p ** valuation,
    )
    cert.cite("weaker-inertia-sylow", "Q occurs as an inertia group over the branch point")


def _weaker_branch_locus_instance(cert, p, d=None, settings=None):
    d = d or p + 1
    G = PermGroup.alternating(d)
    tau = make_tau(p, d)
    shifted = Perm.from_cycles([range(2, p + 2)], d)
    cert.add(
        StepKind.GROUP_COMPUTATION, f"<{shifted}> is conjugate to <{tau}> in A_{d}",
        _conjugate_cyclic_in_alternating(tau, shifted),
    )
    generated = PermGroup(d, [tau, shifted]).order() == G.order()
    cert.add(StepKind.GROUP_COMPUTATION, f"the chosen conjugates generate A_{d}", generated, branch_points=2)
    cert.cite("weaker-branch-locus", f"an A_{d}-cover branched at 2 points has both as inertia")


def alternating_product_cycle_data(p, a=2):
    """
    The subgroups G_1, G_2 of A_{ap} built from blocks of consecutive p points
    and the cyclic shift of those blocks by one.

    Returns:
        tuple: (G_1, G_2, tau, sigma).
    """
    d = a * p
    blocks1 = [list(range(i * p + 1, (i + 1) * p + 1)) for i in range(a)]
    blocks2 = [list(range(j * p + 2, (j + 1) * p + 2)) for j in range(a - 1)]
    blocks2.append(list(range((a - 1) * p + 2, a * p + 1)) + [1])
    G1 = PermGroup(d, [g for block in blocks1 for g in PermGroup.alternating_on(block, d).generators])
    G2 = PermGroup(d, [g for block in blocks2 for g in PermGroup.alternating_on(block, d).generators])
    tau = Perm.from_cycles(blocks1, d)
    sigma = Perm.from_cycles(blocks2, d)
    return G1, G2, tau, sigma


def _alternating_product_cycle_instance(cert, p, d=None, a=2, settings=None):
    d = a * p
    G1, G2, tau, sigma = alternating_product_cycle_data(p, a)
    A = PermGroup.alternating(d)
    cert.add(StepKind.GROUP_COMPUTATION, "tau lies in G_1 and sigma in G_2", G1.contains(tau) and G2.contains(sigma))
    # Swapping two sigma-cycles pointwise is odd (p transpositions) and centralizes sigma.
    cycles = sigma.cycles()
    swap = Perm.from_cycles(list(zip(cycles[0], cycles[1])), d)
    x = _even_conjugator(tau, sigma, swap)
    cert.add(StepKind.GROUP_COMPUTATION, f"sigma is conjugate to tau in A_{d}", x is not None and x.is_even(), conjugator=x)
    cert.add(
        StepKind.GROUP_COMPUTATION, "(1 2 3) lies in <G_1, G_2>",
        PermGroup(d, G1.generators + G2.generators).contains(Perm.from_cycles([(1, 2, 3)], d)),
    )
    verdict = check_patch_hypotheses(
        A,
        [(G1, PermGroup(d, [tau])), (G2, PermGroup(d, [sigma]))],
        p=p,
        settings=settings,
    )
    cert.add(
        StepKind.PATCH_HYPOTHESIS, f"<G_1, G_2> = A_{d} and both inertia groups are purely wild",
        verdict.holds, order=A.order(), tame_orders=verdict.tame_orders, reasons=verdict.reasons,
    )
    cert.cite("product-small-order-gpwic", "(G_1, <tau>) and (G_2, <sigma>) are realizable")
    cert.cite("patching-covers", f"an A_{d}-cover branched at two points with <tau> over both")


def _elliptic_obstruction_instance(cert, p, d=None, settings=None):
    for m in range(2, 9):
        if m % p == 0:
            continue
        genus = riemann_hurwitz_genus(1, m, [m])
        integral = genus.denominator == 1
        cert.add(
            StepKind.GROUP_COMPUTATION,
            f"a Z/{m} cover of an elliptic curve totally ramified at one point {'exists in genus ' + str(genus) if integral else 'is impossible'}",
            integral == (m % 2 == 1),
            m=m, genus=genus,
        )
    cert.cite("elliptic-etale-cyclic", "Z/m lies in the tame fundamental group although no such cover exists for even m")


GPWIC_INSTANCES = {
    "p-group": _p_group_instance,
    "strictly-divisible": _strictly_divisible_instance,
    "product-small-order": _product_small_order_instance,
    "product-arbitrary": _product_arbitrary_instance,
    "weaker-inertia": _weaker_inertia_instance,
    "weaker-branch-locus": _weaker_branch_locus_instance,
    "alternating-product-cycle": _alternating_product_cycle_instance,
    "elliptic-obstruction": _elliptic_obstruction_instance,
}


def build_gpwic_certificate(name, p, d=None, settings=None):
    """Runs one hypothesis instance into a fresh certificate."""
    cert = Certificate(f"gpwic:{name}", p)
    GPWIC_INSTANCES[name](cert, p, d=d, settings=settings)
    return cert


# Example usage:
# series = compute_h_series(PermGroup.symmetric(6), [PermGroup(6, [make_tau(5, 6)])])
# print(series.length, series.gic_holds)
