"""Certificates: ordered chains of checked claims and cited axioms."""

import json
import logging
import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import pandas as pd

from inertia_lab.errors import InvariantViolation

logger = logging.getLogger(__name__)


class StepKind(str, Enum):
    ASSUMPTION_CHECK = "AssumptionCheck"
    COVER_REPORT = "CoverReport"
    GALOIS_VERDICT = "GaloisVerdict"
    KUMMER_STEP = "KummerStep"
    ABHYANKAR_STEP = "AbhyankarStep"
    PATCH_HYPOTHESIS = "PatchHypothesis"
    AXIOM_CITATION = "AxiomCitation"
    GROUP_COMPUTATION = "GroupComputation"
    REDUCTION = "Reduction"


class StepStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    AXIOM = "axiom"
    UNDECIDED = "undecided"


# Statements that are cited, never checked.
AXIOMS = {
    "ic-alternating-p": (
        "For every prime p >= 5, every subgroup <tau> x| <theta^i> of A_p occurs as the inertia group "
        "of a connected A_p-Galois cover of the line branched only at infinity."
    ),
    "ic-alternating-p+2": (
        "For p = 2 mod 3, every possible inertia group <tau> x| <theta^i omega> of A_{p+2} occurs for a "
        "connected A_{p+2}-Galois cover of the line branched only at infinity."
    ),
    "abhyankar-lemma": (
        "Pulling a cover back along the [n]-Kummer cover, n prime to p, replaces the tame generator over "
        "each of 0 and infinity by its power with exponent gcd(n, order); a tame part of order dividing n dies."
    ),
    "galois-closure-inertia": (
        "The inertia groups of the Galois closure of a cover over a point are generated by a wild p-cycle "
        "part and a tame generator whose cycle type is the ramification profile over that point."
    ),
    "patching-realizable-pair": (
        "If G is generated by subgroups G_1..G_n together with I, and each pair (G_i, I_i) with I_i conjugate "
        "to I and |I_i/p(I_i)| = m is realizable, then (G, I) is realizable."
    ),
    "patching-covers": (
        "Given connected covers with groups G_1 and G_2 that share an inertia group at a point, there is a "
        "connected <G_1, G_2>-Galois cover with the union of their branch data."
    ),
    "embedding-normalized": (
        "A realizable pair (H, P) with H normal in a quasi-p group generated by H and a cyclic tame group "
        "extends to the larger group with the tame generator as inertia over 0."
    ),
    "raynaud-quasi-p": (
        "Every quasi-p group G with a Sylow p-subgroup P of order p gives a realizable pair (G, P) on the "
        "affine line."
    ),
    "product-small-order-gpwic": (
        "Products of simple quasi-p groups of order strictly divisible by p, or of simple alternating groups "
        "of degree prime to p, satisfy purely wild inertia for every set of p-subgroups whose normal "
        "closures generate."
    ),
    "p-group-gpwic": (
        "If p-subgroups P_1..P_r generate a p-group G, the covers realizing each (P_i, P_i) patch to a "
        "connected G-Galois cover with P_i as inertia over x_i."
    ),
    "strictly-divisible-gpwic": (
        "A quasi-p group whose order is divisible by p but not p^2 satisfies purely wild inertia for every "
        "choice of p-subgroups."
    ),
    "product-no-common-quotient": (
        "If quasi-p groups G_1 and G_2 satisfy purely wild inertia and have no nontrivial common quotient, "
        "so does G_1 x G_2; the fibre product of the two covers stays connected."
    ),
    "no-common-quotient-simple": (
        "Two non-isomorphic simple groups have no nontrivial quotient in common."
    ),
    "weaker-inertia-sylow": (
        "Each P_i may be enlarged to a Sylow p-subgroup Q_i of <P_i^G> and still occur as inertia over x_i."
    ),
    "weaker-branch-locus": (
        "If chosen conjugates of the P_i generate G, a G-cover exists branched at one point per chosen "
        "conjugate."
    ),
    "hkg-cover": (
        "For a p-group P_1 normalized by Z/n there is a connected P_1 x| Z/n Galois cover of the line, totally "
        "ramified over infinity with Z/n as inertia over 0."
    ),
    "embedding-semidirect": (
        "A two-point cover with group P_1 x| Z/n embeds into a connected (P x| Z/n)-Galois cover with the "
        "same branch points when the added p-subgroup is normalized by Z/n."
    ),
    "elliptic-etale-cyclic": (
        "An elliptic curve has connected etale Z/m-Galois covers for every m prime to p."
    ),
    "reduction-unmechanized": (
        "No replayed route, Abhyankar step or deferral realizes the shape; it stays open."
    ),
}

# Citations that record an open shape; a certificate carrying one is undecided.
OPEN_REFS = frozenset({"reduction-unmechanized"})


def _jsonable(value):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


@dataclass
class CertificateStep:
    """
    One claim of a certificate.

    Attributes:
        kind (StepKind): What sort of claim it is.
        claim (str): Human-readable claim.
        status (StepStatus): pass, fail or axiom.
        inputs (dict): Reproducible inputs and outputs of the check.
        ref (str | None): Key into AXIOMS for cited statements.
        discharges (tuple[str, ...]): Target shapes this step realizes.
    """

    kind: StepKind
    claim: str
    status: StepStatus
    inputs: dict = field(default_factory=dict)
    ref: str | None = None
    discharges: tuple = ()

    @property
    def statement(self):
        return AXIOMS.get(self.ref) if self.ref else None

    def to_dict(self):
        inputs = dict(self.inputs)
        if self.discharges:
            inputs["discharges"] = list(self.discharges)
        return {
            "kind": self.kind.value,
            "claim": self.claim,
            "ref": self.ref,
            "statement": self.statement,
            "inputs": _jsonable(inputs),
            "status": self.status.value,
        }


@dataclass
class Certificate:
    """
    An ordered chain of checked claims about a theorem at a prime.

    The certificate fails when a step fails, is undecided when a step cites
    an open shape, and passes otherwise.
    """

    theorem: str
    p: int
    steps: list = field(default_factory=list)

    def add(self, kind, claim, ok, ref=None, discharges=(), **inputs):
        """Appends a checked step; ok selects pass or fail."""
        status = StepStatus.PASS if ok else StepStatus.FAIL
        step = CertificateStep(kind, claim, status, inputs, ref, tuple(discharges))
        self.steps.append(step)
        logger.debug("%s p=%s: [%s] %s", self.theorem, self.p, status.value, claim)
        return step

    def extend(self, steps):
        """Appends steps built elsewhere, in order."""
        for step in steps:
            self.steps.append(step)
            logger.debug("%s p=%s: [%s] %s", self.theorem, self.p, step.status.value, step.claim)

    def cite(self, ref, claim, kind=StepKind.AXIOM_CITATION, discharges=(), **inputs):
        """Appends an axiom step citing AXIOMS[ref]."""
        step = CertificateStep(kind, claim, StepStatus.AXIOM, inputs, ref, tuple(discharges))
        self.steps.append(step)
        logger.debug("%s p=%s: [axiom %s] %s", self.theorem, self.p, ref, claim)
        return step

    @property
    def overall(self):
        if self.first_failure is not None:
            return StepStatus.FAIL
        if any(s.ref in OPEN_REFS for s in self.steps):
            return StepStatus.UNDECIDED
        return StepStatus.PASS

    @property
    def passed(self):
        return self.overall is StepStatus.PASS

    @property
    def first_failure(self):
        return next((i for i, s in enumerate(self.steps) if s.status is StepStatus.FAIL), None)

    def discharged(self):
        """Target shapes discharged by some non-failing step that is not an open citation."""
        return {
            d for s in self.steps
            if s.status is not StepStatus.FAIL and s.ref not in OPEN_REFS
            for d in s.discharges
        }

    def open_targets(self):
        """Target shapes only an open citation accounts for."""
        cited = {d for s in self.steps if s.ref in OPEN_REFS for d in s.discharges}
        return cited - self.discharged()

    def axioms(self):
        return sorted({s.ref for s in self.steps if s.status is StepStatus.AXIOM})

    def to_dict(self):
        result = {
            "theorem": self.theorem,
            "p": self.p,
            "steps": [s.to_dict() for s in self.steps],
            "overall": self.overall.value,
        }
        if self.first_failure is not None:
            result["first_failure"] = self.first_failure
        open_targets = self.open_targets()
        if open_targets:
            result["open_targets"] = sorted(open_targets)
        return result

    def to_text(self):
        lines = [f"{self.theorem} at p={self.p}: {self.overall.value}"]
        for i, step in enumerate(self.steps):
            ref = f" [{step.ref}]" if step.ref else ""
            lines.append(f"  {i:3d} {step.status.value:5s} {step.kind.value}: {step.claim}{ref}")
        if self.first_failure is not None:
            lines.append(f"first failure: step {self.first_failure}")
        for shape in sorted(self.open_targets()):
            lines.append(f"open: {shape}")
        axioms = self.axioms()
        if axioms:
            lines.append("axioms: " + ", ".join(axioms))
        return "\n".join(lines)

    def to_dataframe(self):
        return pd.DataFrame(
            [
                {
                    "index": i,
                    "kind": s.kind.value,
                    "claim": s.claim,
                    "ref": s.ref or "",
                    "status": s.status.value,
                    "discharges": ";".join(s.discharges),
                }
                for i, s in enumerate(self.steps)
            ],
            columns=["index", "kind", "claim", "ref", "status", "discharges"],
        )

    def save_to_csv(self, directory="certificates"):
        """
        Saves the steps as CSV.

        Args:
            directory (str): Output directory, created when missing.

        Returns:
            str: Path of the written file.
        """
        os.makedirs(directory, exist_ok=True)
        name = f"{self.theorem.replace('+', 'plus')}_p{self.p}.csv"
        path = os.path.join(directory, name)
        self.to_dataframe().to_csv(path, index=False)
        return path


def lint_certificate(certificate):
    """
    Lists structural problems: axiom steps without a resolvable ref and
    refs that do not resolve.

    Returns:
        list[str]: Empty for a well-formed certificate.
    """
    problems = []
    for i, step in enumerate(certificate.steps):
        if step.status is StepStatus.AXIOM and not step.ref:
            problems.append(f"step {i} is an axiom without a ref")
        if step.ref and step.ref not in AXIOMS:
            problems.append(f"step {i} cites unknown ref {step.ref!r}")
    return problems


def assert_lint_clean(certificate):
    problems = lint_certificate(certificate)
    if problems:
        raise InvariantViolation(f"malformed certificate {certificate.theorem}: " + "; ".join(problems))
    return certificate


def emit_certificate(certificate, fmt="json"):
    """
    Serializes a certificate deterministically.

    Args:
        certificate (Certificate): The certificate.
        fmt (str): "json" or "text".

    Returns:
        bytes: UTF-8 output ending in a newline.
    """
    if fmt == "json":
        text = json.dumps(certificate.to_dict(), indent=2, ensure_ascii=False)
    elif fmt == "text":
        text = certificate.to_text()
    else:
        raise ValueError(f"unknown certificate format {fmt!r}")
    return (text + "\n").encode("utf-8")


# Example usage:
# cert = Certificate("A_p+1", 5)
# cert.cite("abhyankar-lemma", "pullback changes inertia by powers")
# print(emit_certificate(cert).decode("utf-8"))
