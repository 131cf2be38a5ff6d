"""Exact-arithmetic checks of inertia groups of covers of the projective line."""

__version__ = "0.2.0"

from inertia_lab.certificate import Certificate, emit_certificate, lint_certificate
from inertia_lab.config import DEFAULT_SETTINGS, Settings
from inertia_lab.cover import (
    CoverSpec,
    TrinomialSpec,
    check_assumption,
    known_witness,
    parse_cover_spec,
    ramification_report,
    witness_search,
)
from inertia_lab.errors import InertiaLabError, ScopeError
from inertia_lab.ff import FiniteField, Polynomial, resultant
from inertia_lab.hypotheses import check_patch_hypotheses, compute_h_series
from inertia_lab.inertia import InertiaShape, enumerate_ic_targets, kummer_pullback
from inertia_lab.perm import Perm, PermGroup, normal_closure
from inertia_lab.theorems import check_gpwic, verify_corollary, verify_ic_theorem, verify_sym_theorem

__all__ = [
    "Certificate",
    "CoverSpec",
    "DEFAULT_SETTINGS",
    "FiniteField",
    "InertiaLabError",
    "InertiaShape",
    "Perm",
    "PermGroup",
    "Polynomial",
    "ScopeError",
    "Settings",
    "TrinomialSpec",
    "check_assumption",
    "check_gpwic",
    "check_patch_hypotheses",
    "compute_h_series",
    "emit_certificate",
    "enumerate_ic_targets",
    "known_witness",
    "kummer_pullback",
    "lint_certificate",
    "normal_closure",
    "parse_cover_spec",
    "ramification_report",
    "resultant",
    "verify_corollary",
    "verify_ic_theorem",
    "verify_sym_theorem",
    "witness_search",
]
