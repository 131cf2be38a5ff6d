"""Exception hierarchy shared by every inertia_lab module.

Errors fall in two families. Plain ``InertiaLabError`` subclasses signal bad
input and map to CLI exit code 2. ``ScopeError`` subclasses signal that a
request is well formed but lies outside what can be decided (a budget, a side
condition, an unsupported transition) and map to exit code 3.
"""


class InertiaLabError(Exception):
    """Base class for all errors raised by inertia_lab."""

    exit_code = 2


class ParseError(InertiaLabError):
    """Text could not be parsed as a permutation, shape, element or spec."""


class FieldMismatch(InertiaLabError):
    """Operands live in different finite fields."""


class DivisionByZero(InertiaLabError, ZeroDivisionError):
    """Inversion of zero in a field or division by the zero polynomial."""


class NotASquare(InertiaLabError):
    """The element has no square root in its field."""


class DegreeMismatch(InertiaLabError):
    """Permutations or groups of different degrees were combined."""


class BadDegree(InertiaLabError):
    """A degree is too small for the requested construction."""


class InvariantViolation(InertiaLabError):
    """A value breaks the invariants of its type."""


class InvalidSpec(InertiaLabError):
    """A cover specification fails validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid cover spec: " + "; ".join(self.violations))


class AssumptionFails(InertiaLabError):
    """g(y) is not a nonzero constant, so the cover analysis does not apply."""


class NotASubset(InertiaLabError):
    """A seed set is not contained in the ambient group."""


class NotASubgroup(InertiaLabError):
    """A group is not contained in the group it should lie in."""


class NotAPGroup(InertiaLabError):
    """The group order is not a power of the given prime."""


class NotASubgroupOfProduct(InertiaLabError):
    """A group does not lie in the given direct product."""


class NotCoprime(InertiaLabError):
    """A Kummer exponent shares a factor with the characteristic."""


class ScopeError(InertiaLabError):
    """Base class for requests outside the decidable scope."""

    exit_code = 3


class DegreeBudgetExceeded(ScopeError):
    """Permutation degree exceeds the configured budget."""


class BudgetExceeded(ScopeError):
    """A search space exceeds the configured budget."""


class ScopeExceeded(ScopeError):
    """A computation needs machinery outside the supported range."""


class Unsupported(ScopeError):
    """A group transition is not one of the supported pullback patterns."""


class BadRange(ScopeError):
    """A degree lies outside the range an enumeration covers."""


class SideConditionViolated(ScopeError):
    """A prime fails the side conditions of a theorem or witness family."""

    def __init__(self, theorem, p, reason):
        self.theorem = theorem
        self.p = p
        self.reason = reason
        super().__init__(f"{theorem} at p={p}: side condition fails ({reason})")


def exit_code_for(error):
    """Returns the CLI exit code for an exception."""
    if isinstance(error, InertiaLabError):
        return error.exit_code
    return 2
