"""Certificate replays of the realization theorems.

A replay enumerates the inertia shapes a theorem must realize, runs each
route (a witness cover followed by Kummer pullbacks) through the exact
checks of ``cover`` and ``inertia``, and discharges every shape by a route,
an Abhyankar step or a deferral to a lower degree. Shapes nothing reaches
are cited as open and make the certificate undecided rather than passing.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from sympy import divisors, isprime

from inertia_lab.certificate import Certificate, StepKind, StepStatus, CertificateStep, assert_lint_clean
from inertia_lab.config import DEFAULT_SETTINGS
from inertia_lab.cover import CoverSpec, GaloisVerdict, check_assumption, known_witness, power_sum_verdict, ramification_report
from inertia_lab.errors import InvalidSpec, NotCoprime, ParseError, SideConditionViolated, Unsupported
from inertia_lab.ff import proof_identity_holds
from inertia_lab.hypotheses import GPWIC_INSTANCES, build_gpwic_certificate, check_patch_hypotheses, kummer_index_pairs
from inertia_lab.inertia import (
    InertiaShape,
    RamificationProfile,
    TargetStatus,
    alt_fp_parts,
    alternating_obligation,
    enumerate_ic_targets,
    kummer_pullback,
    realize,
    shape_key,
)
from inertia_lab.perm import GroupClass, Perm, PermGroup, frattini_quotient, make_tau, make_theta, normal_closure

logger = logging.getLogger(__name__)

IC_THEOREMS = {"A_p": 0, "A_p+1": 1, "A_p+2": 2, "A_p+3": 3, "A_p+4": 4, "A_p+5": 5}
SYM_THEOREMS = {"S_p": 0, "S_p+1": 1, "S_p+2": 2, "S_p+3": 3, "S_d-same-inertia": None, "semidirect": None}
COROLLARIES = ("odd-t-21", "even-t-12", "odd-t-22")
GPWIC_CHECKS = tuple(GPWIC_INSTANCES) + ("small-alternating-gic",)

# IC in these degrees is cited rather than replayed.
CITED_IC = {0: "ic-alternating-p", 2: "ic-alternating-p+2"}


def _odd_divisors(p):
    return [i for i in divisors(p - 1) if i % 2]


def _even_divisors(p):
    return [j for j in divisors(p - 1) if j % 2 == 0]


@dataclass(frozen=True)
class Route:
    """
    A witness family and the Kummer chains applied to its cover.

    Attributes:
        family (str): Key of ``cover.WITNESS_FAMILIES``.
        chains (Callable[[int], list[tuple[int, ...]]]): Kummer exponents per chain, as a function of p.
        params (tuple[tuple[str, int], ...]): Extra family parameters.
    """

    family: str
    chains: Callable
    params: tuple = ()

    def witness(self, p, witnesses=None):
        if witnesses and self.family in witnesses:
            return witnesses[self.family]
        return known_witness(self.family, p, **dict(self.params))


IC_ROUTES = {
    "A_p+1": (Route("A_p+1", lambda p: [(2 * (p - 2),)]),),
    "A_p+3": (
        Route("A_p+3-21", lambda p: [(p + 2,)]),
        Route("A_p+3-22", lambda p: [(p + 2,)]),
    ),
    "A_p+4": (
        Route("A_p+4-22", lambda p: [(2 * (p + 2),)]),
        Route("A_p+4-31", lambda p: [(p - 2,)]),
    ),
    "A_p+5": (
        Route("A_p+5-I4", lambda p: [(3 * (p + 2),)]),
        Route("A_p+5-I5", lambda p: [(p + 4,)] if (p - 1) % 5 else [(6 * (p - 2),)]),
        Route("A_p+5-23", lambda p: [((p + 5) // 2,)]),
    ),
}

SYM_ROUTES = {
    "S_p": (Route("trinomial", lambda p: [(i,) for i in _odd_divisors(p)], (("t", 2),)),),
    "S_p+1": (Route("A_p+1", lambda p: [(p - 2, i) for i in _odd_divisors(p)]),),
    "S_p+2": (
        Route("S_p+2-A", lambda p: [(i,) for i in _odd_divisors(p)]),
        Route("S_p+2-B", lambda p: [(j // 2,) for j in _even_divisors(p)]),
    ),
    "S_p+3": (
        Route("S_p+3-r3", lambda p: [(i,) for i in _odd_divisors(p)]),
        Route("S_p+3-r2", lambda p: [(j // 2,) for j in _even_divisors(p)]),
        Route("S_p+3-r1", lambda p: [(i,) for i in _odd_divisors(p)]),
    ),
}

COROLLARY_CHAINS = {
    "odd-t-21": lambda p, t: [(p + t - 1,)],
    "even-t-12": lambda p, t: [(p + t,)],
    "odd-t-22": lambda p, t: [(p + t - 1,)],
}


def _step(kind, claim, ok, **inputs):
    return CertificateStep(kind, claim, StepStatus.PASS if ok else StepStatus.FAIL, inputs)


def _fail(step, reason):
    step.status = StepStatus.FAIL
    step.inputs["failure"] = reason


@dataclass
class _ChainOutcome:
    exponents: tuple
    steps: list
    ok: bool = False
    shape: InertiaShape | None = None
    over0: object = None


@dataclass
class _RouteOutcome:
    family: str
    base: list = field(default_factory=list)
    chains: list = field(default_factory=list)
    ok: bool = False


def _final_requirement(over0, group, target):
    """None when the pulled-back cover has the theorem's shape over 0, else the reason."""
    if target is GroupClass.ALTERNATING:
        if group is not GroupClass.ALTERNATING:
            return f"the pullback is {group.value}, not Alternating"
        if over0.order() != 1:
            return f"the tame part {over0} over 0 survives"
        return None
    if group is not GroupClass.SYMMETRIC:
        return f"the pullback is {group.value}, not Symmetric"
    if over0.is_even():
        return f"the generator {over0} over 0 is even"
    return None


def _replay_chain(report, group, exponents, target):
    over0, shape = report.shape0.gamma, report.shape_inf
    outcome = _ChainOutcome(tuple(exponents), [])
    for n in exponents:
        try:
            result = kummer_pullback(over0, shape, n, group)
        except (NotCoprime, Unsupported) as e:
            outcome.steps.append(_step(StepKind.KUMMER_STEP, f"[{n}]-Kummer pullback of a {group.value} cover", False, n=n, error=str(e)))
            return outcome
        over0, shape, group = result.over0, result.shape, result.group
        over0_text = "étale over 0" if result.over0_order == 1 else f"{over0} over 0"
        step = _step(
            StepKind.KUMMER_STEP,
            f"[{n}]-Kummer pullback: {group.value} cover, {over0_text}, {shape} over infinity",
            result.obligation_holds,
            n=n, obligation=result.obligation, over0_order=result.over0_order, inertia_over_inf=str(shape),
        )
        outcome.steps.append(step)
        if not result.obligation_holds:
            return outcome
    reason = _final_requirement(over0, group, target)
    if reason is not None:
        _fail(outcome.steps[-1], reason)
        return outcome
    outcome.ok, outcome.shape, outcome.over0 = True, shape, over0
    return outcome


def _replay_route(route, p, target, witnesses=None):
    """
    Runs one route: assumption, report, Galois verdict, then each Kummer chain.

    Args:
        route (Route): The route.
        p (int): Prime.
        target (GroupClass): Group the pullbacks must end in.
        witnesses (dict | None): Specs replacing the family witnesses.

    Returns:
        _RouteOutcome: Base steps, and chain outcomes when the cover checks out.
    """
    spec = route.witness(p, witnesses)
    outcome = _RouteOutcome(route.family)
    try:
        assumption = check_assumption(spec)
    except InvalidSpec as e:
        outcome.base.append(
            _step(StepKind.ASSUMPTION_CHECK, f"the {route.family} witness is a valid cover", False,
                  spec=spec.to_text(), violations=e.violations)
        )
        return outcome
    identity = proof_identity_holds(spec.polynomials())
    ok = assumption.holds and identity
    inputs = {"spec": spec.to_text(), "g": str(assumption.g), "identity": identity}
    if isinstance(spec, CoverSpec):
        sums = power_sum_verdict(spec)
        inputs["power_sums"] = [str(x) for x in sums.sums]
        ok = ok and sums.holds
    outcome.base.append(
        _step(StepKind.ASSUMPTION_CHECK, f"g(y) is a nonzero constant for the {route.family} witness", ok, **inputs)
    )
    if not ok:
        return outcome

    report = ramification_report(spec)
    d = spec.d
    exact = (
        report.over0.total == d
        and report.over_inf == RamificationProfile.of(spec.over_inf_lengths())
        and report.over_inf.total == d
        and report.jump == Fraction(spec.jump_numerator, p - 1)
    )
    outcome.base.append(
        _step(
            StepKind.COVER_REPORT,
            f"étale outside {{0, infinity}}, over 0 {report.over0}, over infinity {report.over_inf}, jump {report.jump}",
            report.etale and exact,
            **report.to_dict(),
        )
    )
    if not (report.etale and exact):
        return outcome

    decision = report.galois
    group = {GaloisVerdict.ALTERNATING: GroupClass.ALTERNATING, GaloisVerdict.SYMMETRIC: GroupClass.SYMMETRIC}.get(
        decision.verdict
    )
    outcome.base.append(
        _step(
            StepKind.GALOIS_VERDICT,
            f"the Galois closure has group {decision.verdict.value}",
            group is not None,
            primitivity=decision.primitivity, clause=decision.clause, basis=decision.basis,
        )
    )
    if group is None:
        return outcome
    outcome.ok = True
    for chain in route.chains(p):
        outcome.chains.append(_replay_chain(report, group, chain, target))
    return outcome


def _targets_step(cert, targets):
    by_status = {status: [str(e) for e in targets.entries if e.status is status] for status in TargetStatus}
    name = "A" if targets.group is GroupClass.ALTERNATING else "S"
    cert.add(
        StepKind.GROUP_COMPUTATION,
        f"{len(targets.entries)} inertia shapes to realize in {name}_{targets.d}",
        bool(targets.entries),
        must_realize=by_status[TargetStatus.MUST_REALIZE],
        reducible=by_status[TargetStatus.REDUCIBLE],
        deferred=by_status[TargetStatus.DEFERRED],
    )


@lru_cache(maxsize=None)
def _sub_certificate_overall(theorem_id, p):
    return verify_ic_theorem(theorem_id, p).overall


def _lower_degree_step(cert, p, d, discharges=()):
    """
    Cites or replays IC for A_d.

    Returns:
        bool: False when the replay in degree d is undecided.
    """
    offset = d - p
    if offset in CITED_IC:
        cert.cite(CITED_IC[offset], f"IC holds for A_{d}", discharges=discharges)
        return True
    theorem_id = f"A_p+{offset}"
    overall = _sub_certificate_overall(theorem_id, p)
    if overall is StepStatus.UNDECIDED:
        cert.cite(
            "reduction-unmechanized", f"IC for A_{d} is undecided at p={p}",
            kind=StepKind.REDUCTION, discharges=discharges, theorem=theorem_id,
        )
        return False
    cert.add(
        StepKind.REDUCTION, f"IC for A_{d} replays at p={p}", overall is StepStatus.PASS,
        discharges=discharges, theorem=theorem_id,
    )
    return True


def _defer(cert, entry, p, settings):
    shape = entry.shape
    d = shape.d
    I = realize(shape, settings)
    parts = alt_fp_parts(shape, d)
    m = I.order() // p
    verdict = check_patch_hypotheses(PermGroup.alternating(d), parts, I=I, m=m, p=p, settings=settings)
    cert.add(
        StepKind.PATCH_HYPOTHESIS,
        f"A_{d} = <Alt(Supp(I) + x), I> over the {len(parts)} fixed points, each with tame order {m}",
        verdict.holds,
        shape=str(shape), tame_orders=verdict.tame_orders, reasons=verdict.reasons,
    )
    if not _lower_degree_step(cert, p, entry.deferred_to, discharges=(str(shape),)):
        return False
    cert.cite("patching-realizable-pair", f"{shape} is realizable in A_{d}", discharges=(str(shape),))
    return True


def _abhyankar(entry, group):
    source, c = entry.reduced_from, entry.kummer_exponent
    claim = f"[{c}]-Kummer pullback of the cover realizing {source} realizes {entry.shape}"
    try:
        result = kummer_pullback(1, source, c, group)
    except (NotCoprime, Unsupported) as e:
        return _step(StepKind.ABHYANKAR_STEP, claim, False, n=c, error=str(e))
    ok = result.obligation_holds and result.group is group and shape_key(result.shape) == shape_key(entry.shape)
    step = _step(StepKind.ABHYANKAR_STEP, claim, ok, n=c, source=str(source), obligation=result.obligation)
    step.discharges = (str(entry.shape),)
    return step


def _leave_open(cert, entry, p):
    logger.warning("%s p=%s: %s has no mechanized route", cert.theorem, p, entry.shape)
    cert.cite(
        "reduction-unmechanized", f"{entry.shape} has no replayed route",
        kind=StepKind.REDUCTION, discharges=(str(entry.shape),),
    )


def _discharge(
cert, targets, routes, p, settings, witnesses=None):
    """
    Discharges every target: route matches, deferrals, then Abhyankar steps
    from discharged sources. A shape none of these reach is left open, and so
    is every shape that would only follow from an open one.

    Returns:
        list[_RouteOutcome]: The routes whose steps were emitted.
    """
    group = targets.group
    by_key = {shape_key(e.shape): e for e in targets.entries}
    done = set()
    emitted = []
    for route in routes:
        outcome = _replay_route(route, p, group, witnesses)
        kept = []
        for chain in outcome.chains:
            if not chain.ok:
                kept.append(chain)
                continue
            key = shape_key(chain.shape)
            if key in done:
                continue
            entry = by_key.get(key)
            if entry is None:
                _fail(chain.steps[-1], f"{chain.shape} is not among the target shapes")
            else:
                chain.steps[-1].discharges = (str(entry.shape),)
                done.add(key)
            kept.append(chain)
        if kept or not outcome.ok:
            cert.extend(outcome.base + [s for chain in kept for s in chain.steps])
            outcome.chains = kept
            emitted.append(outcome)

    opened = set()
    for entry in targets.entries:
        key = shape_key(entry.shape)
        if entry.status is TargetStatus.DEFERRED and key not in done:
            if not _defer(cert, entry, p, settings):
                opened.add(key)
            done.add(key)
    for entry in targets.entries:
        key = shape_key(entry.shape)
        if entry.status is TargetStatus.MUST_REALIZE and key not in done:
            _leave_open(cert, entry, p)
            opened.add(key)
            done.add(key)

    pending = [e for e in targets.entries if shape_key(e.shape) not in done]
    while pending:
        ready = [e for e in pending if shape_key(e.reduced_from) in done - opened]
        if not ready:
            break
        for entry in ready:
            cert.extend([_abhyankar(entry, group)])
            done.add(shape_key(entry.shape))
        pending = [e for e in pending if shape_key(e.shape) not in done]
    for entry in pending:
        _leave_open(cert, entry, p)

    if emitted:
        cert.cite("galois-closure-inertia", "inertia groups of each witness closure are read off its ramification")
        cert.cite("abhyankar-lemma", "Kummer pullbacks act on the tame generators by gcd powers")
    return emitted


def _require(condition, theorem, p, reason):
    if not condition:
        raise SideConditionViolated(theorem, p, reason)


def _check_prime(theorem, p, least=5):
    _require(isinstance(p, int) and p >= least and isprime(p), theorem, p, f"p must be a prime >= {least}")


def _is_prime_by_trial_division(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _ic_side_conditions(theorem_id, p):
    _check_prime(theorem_id, p)
    if theorem_id != "A_p":
        _require(p % 3 == 2, theorem_id, p, "p = 2 mod 3")
    if theorem_id == "A_p+5":
        _require(p >= 17, theorem_id, p, "p >= 17")
        _require((p + 1) % 4 != 0, theorem_id, p, "4 does not divide p+1")


def _sym_side_conditions(theorem_id, p):
    _check_prime(theorem_id, p)
    if theorem_id == "S_p+1":
        _require(p % 3 == 2, theorem_id, p, "p = 2 mod 3")
    if theorem_id in ("S_p+2", "S_p+3"):
        _require(p % 12 == 11, theorem_id, p, "p = 11 mod 12")
    if theorem_id == "S_p+2":
        _require(
            not (p - 1 >= 5 and _is_prime_by_trial_division(p - 1)),
            theorem_id, p, f"p = {p - 1} + 1 with {p - 1} a prime >= 5",
        )


def verify_ic_theorem(theorem_id, p, settings=None, witnesses=None):
    """
    Replays the inertia conjecture for A_{p+k} at the prime p.

    Args:
        theorem_id (str): One of IC_THEOREMS.
        p (int): Prime.
        settings (Settings | None): Group-computation settings.
        witnesses (dict[str, CoverSpec] | None): Replacement witnesses keyed by family.

    Returns:
        Certificate: Passes iff every step passes or is cited; undecided when a
        shape is left open, which happens for A_{p+4} and A_{p+5} when 4 divides p-1.

    Raises:
        ParseError: For an unknown theorem id.
        SideConditionViolated: If p fails the theorem's conditions.
    """
    if theorem_id not in IC_THEOREMS:
        raise ParseError(f"unknown IC theorem {theorem_id!r}")
    settings = settings or DEFAULT_SETTINGS
    _ic_side_conditions(theorem_id, p)
    offset = IC_THEOREMS[theorem_id]
    d = p + offset
    cert = Certificate(theorem_id, p)
    if offset in CITED_IC:
        targets = enumerate_ic_targets(d, p, GroupClass.ALTERNATING)
        _targets_step(cert, targets)
        _lower_degree_step(cert, p, d, discharges=tuple(str(e.shape) for e in targets.entries))
    else:
        targets = enumerate_ic_targets(d, p, GroupClass.ALTERNATING, lower_ic=tuple(range(p, d)))
        _targets_step(cert, targets)
        _discharge(cert, targets, IC_ROUTES[theorem_id], p, settings, witnesses)
    logger.info("%s at p=%s: %s", theorem_id, p, cert.overall.value)
    return assert_lint_clean(cert)


def _same_inertia(cert, p, d, settings):
    _require(d == p or math.gcd(d, p) == 1, "S_d-same-inertia", p, f"d={d} must equal p or be prime to p")
    _require(p <= d <= settings.degree_budget, "S_d-same-inertia", p, f"d={d} outside [p, {settings.degree_budget}]")
    gamma = make_theta(p, d)
    n = gamma.order()
    A = PermGroup.alternating(d)
    cert.add(
        StepKind.GROUP_COMPUTATION, f"gamma = {gamma} is odd of order {n} prime to {p}",
        not gamma.is_even() and math.gcd(n, p) == 1, gamma=str(gamma), order=n,
    )
    cert.add(
        StepKind.GROUP_COMPUTATION, f"the normal closure of <tau> in A_{d} is A_{d}",
        alternating_obligation(p, d),
    )
    cert.add(
        StepKind.GROUP_COMPUTATION, f"<A_{d}, gamma> = S_{d}",
        A.with_generators([gamma]).order() == math.factorial(d),
    )
    pairs = kummer_index_pairs(n)
    cert.add(
        StepKind.GROUP_COMPUTATION, f"the Z/{n} cover branched at 0 and infinity is totally ramified at both",
        pairs == [(n, n)], pairs=pairs,
    )
    cert.cite("raynaud-quasi-p", f"(A_{d}, <tau>) is realizable")
    tau = make_tau(p, d)
    cert.cite(
        "embedding-normalized", f"S_{d} has <gamma> over 0 and <tau> x| <gamma> over infinity",
        discharges=(f"<{tau}> x| <{gamma}>",),
    )


def _semidirect(cert, p, settings):
    degree = 2 * p
    a = Perm.from_cycles([range(1, p + 1)], degree)
    b = Perm.from_cycles([range(p + 1, degree + 1)], degree)
    theta = make_theta(p, p)
    c = Perm.direct_sum(theta, theta)
    n = c.order()
    P = PermGroup(degree, [a, b], settings)
    G = PermGroup(degree, [a, b, c], settings)
    P1, P2 = PermGroup(degree, [a], settings), PermGroup(degree, [b], settings)
    cert.add(
        StepKind.GROUP_COMPUTATION, f"<c> = Z/{n} normalizes P = Z/{p} x Z/{p}",
        all(P.contains(x.conjugate(c)) for x in (a, b)), c=str(c),
    )
    cert.add(
        StepKind.GROUP_COMPUTATION, f"|G| = {p}^2 * {n} with ({n}, {p}) = 1",
        G.order() == p * p * n and math.gcd(n, p) == 1, order=G.order(),
    )
    cert.add(
        StepKind.GROUP_COMPUTATION, "Z/n normalizes P_1 and P_2",
        P1.contains(a.conjugate(c)) and P2.contains(b.conjugate(c)),
    )
    cert.add(
        StepKind.GROUP_COMPUTATION, "<P_1^G, P_2^G> = P",
        normal_closure(G, [a, b]).same_group(P),
    )
    frattini = frattini_quotient(P, p, [P1, P2])
    cert.add(
        StepKind.GROUP_COMPUTATION, "P = <P_1, P_2> through the Frattini quotient",
        frattini.direct_generation, rank=frattini.rank, image_ranks=frattini.image_ranks,
    )
    pairs = kummer_index_pairs(n)
    cert.add(
        StepKind.GROUP_COMPUTATION, f"Riemann-Hurwitz forces m_1 = m_2 = {n} for the Z/{n} quotient",
        pairs == [(n, n)], pairs=pairs,
    )
    cert.cite("hkg-cover", f"a P_1 x| Z/{n} cover totally ramified over infinity with Z/{n} over 0")
    cert.cite("embedding-semidirect", f"the cover embeds into a (P x| Z/{n})-cover branched at 0 and infinity")


def verify_sym_theorem(theorem_id, p, settings=None, witnesses=None, d=None):
    """
    Replays a realization theorem for S_d with two branch points.

    For the S_{p+k} theorems every route must keep the same odd generator
    over 0, so the covers patch to one with that generator over 0.

    Args:
        theorem_id (str): One of SYM_THEOREMS.
        p (int): Prime.
        settings (Settings | None): Group-computation settings.
        witnesses (dict[str, CoverSpec] | None): Replacement witnesses keyed by family.
        d (int | None): Degree for S_d-same-inertia; defaults to p + 1.

    Returns:
        Certificate: The replay.

    Raises:
        ParseError: For an unknown theorem id.
        SideConditionViolated: If p fails the theorem's conditions.
    """
    if theorem_id not in SYM_THEOREMS:
        raise ParseError(f"unknown symmetric-group theorem {theorem_id!r}")
    settings = settings or DEFAULT_SETTINGS
    cert = Certificate(theorem_id, p)
    if theorem_id == "S_d-same-inertia":
        _check_prime(theorem_id, p, least=3)
        _same_inertia(cert, p, d if d is not None else p + 1, settings)
    elif theorem_id == "semidirect":
        _check_prime(theorem_id, p, least=3)
        _semidirect(cert, p, settings)
    else:
        _sym_side_conditions(theorem_id, p)
        targets = enumerate_ic_targets(p + SYM_THEOREMS[theorem_id], p, GroupClass.SYMMETRIC)
        _targets_step(cert, targets)
        emitted = _discharge(cert, targets, SYM_ROUTES[theorem_id], p, settings, witnesses)
        finals = [chain.over0 for outcome in emitted for chain in outcome.chains if chain.ok]
        cycle_types = sorted({g.cycle_type() for g in finals})
        cert.add(
            StepKind.GROUP_COMPUTATION, "every route keeps one odd generator over 0 up to conjugacy",
            len(cycle_types) == 1 and not any(g.is_even() for g in finals),
            cycle_types=cycle_types,
        )
        cert.cite("patching-covers", "covers with conjugate inertia over 0 patch to the required pairs")
    logger.info("%s at p=%s: %s", theorem_id, p, cert.overall.value)
    return assert_lint_clean(cert)


def _corollary_shape(name, p, t):
    d = p + t
    if name == "odd-t-21":
        return InertiaShape.wild(p, d, 2, Perm.from_cycles([range(p + 1, d + 1)], d))
    tail = Perm.from_cycles([range(p + 1, d)], d)
    if name == "even-t-12":
        return InertiaShape.wild(p, d, 2, tail)
    return InertiaShape.wild(p, d, math.gcd(t, p - 1), tail)


def verify_corollary(name, p, t, witnesses=None):
    """
    Replays one of the generic corollaries: the witness cover of the family
    pulled back to an A_{p+t}-cover étale over 0.

    Raises:
        ParseError: For an unknown corollary.
        SideConditionViolated: If (p, t) fails the family's conditions.
    """
    if name not in COROLLARIES:
        raise ParseError(f"unknown corollary {name!r}")
    cert = Certificate(name, p)
    route = Route(name, lambda q: COROLLARY_CHAINS[name](q, t), (("t", t),))
    outcome = _replay_route(route, p, GroupClass.ALTERNATING, witnesses)
    cert.extend(outcome.base + [s for chain in outcome.chains for s in chain.steps])
    expected = _corollary_shape(name, p, t)
    for chain in outcome.chains:
        if chain.ok:
            cert.add(
                StepKind.GROUP_COMPUTATION, f"the pullback realizes {expected}",
                shape_key(chain.shape) == shape_key(expected),
                discharges=(str(expected),), realized=str(chain.shape),
            )
    if outcome.ok:
        cert.cite("galois-closure-inertia", "inertia groups of the closure are read off its ramification")
        cert.cite("abhyankar-lemma", "the pullback kills the tame part over 0")
    logger.info("%s at p=%s t=%s: %s", name, p, t, cert.overall.value)
    return assert_lint_clean(cert)


def _small_alternating_gic(cert, p, d=None):
    degrees = [p] + ([p + k for k in range(1, 5)] if p % 3 == 2 else [])
    if d is not None:
        _require(d in degrees, "small-alternating-gic", p, f"d={d} not in {degrees}")
        degrees = [d]
    for degree in degrees:
        cert.add(
            StepKind.GROUP_COMPUTATION, f"A_{degree} is quasi-p: <tau^A_{degree}> = A_{degree}",
            alternating_obligation(p, degree),
        )
        _lower_degree_step(cert, p, degree)
    cert.cite("patching-covers", "patching with Kummer covers for the tame-only inertia groups gives the A_d-cover")


def check_gpwic(check_id, p, d=None, settings=None):
    """
    Checks the finite hypotheses of one generalized purely wild inertia result.

    Args:
        check_id (str): One of GPWIC_CHECKS.
        p (int): Prime.
        d (int | None): Degree, for the checks that take one.
        settings (Settings | None): Group-computation settings.

    Returns:
        Certificate: Named ``gpwic:<check_id>``.

    Raises:
        ParseError: For an unknown check.
        SideConditionViolated: If p is not a usable prime.
        ScopeExceeded: For Sylow computations outside the cyclic range.
    """
    if check_id not in GPWIC_CHECKS:
        raise ParseError(f"unknown GPWIC check {check_id!r}")
    if check_id == "small-alternating-gic":
        _check_prime(check_id, p)
        cert = Certificate(f"gpwic:{check_id}", p)
        _small_alternating_gic(cert, p, d)
    else:
        _check_prime(check_id, p, least=3)
        cert = build_gpwic_certificate(check_id, p, d=d, settings=settings)
    logger.info("%s at p=%s: %s", cert.theorem, p, cert.overall.value)
    return assert_lint_clean(cert)


def replay(theorem_id, p, d=None, t=None, settings=None):
    """Dispatches a theorem, corollary or GPWIC id to its replay."""
    if theorem_id in IC_THEOREMS:
        return verify_ic_theorem(theorem_id, p, settings)
    if theorem_id in SYM_THEOREMS:
        return verify_sym_theorem(theorem_id, p, settings, d=d)
    if theorem_id in COROLLARIES:
        if t is None:
            raise ParseError(f"{theorem_id} needs a value for t")
        return verify_corollary(theorem_id, p, t)
    name = theorem_id.removeprefix("gpwic:")
    if name in GPWIC_CHECKS:
        return check_gpwic(name, p, d, settings)
    raise ParseError(f"unknown theorem id {theorem_id!r}")


# Example usage:
# cert = verify_ic_theorem("A_p+1", 5)
# print(cert.to_text())
