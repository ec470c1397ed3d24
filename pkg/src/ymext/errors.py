"""
Exceptions raised by the extension-category engine.

Every engine error derives from `YmextError`, itself a `ValueError`, so
callers that guard numerical inputs with ``except ValueError`` keep working.
Verdict-style operations (validation, maximality, coherence, ...) never
raise for a negative outcome; they return a report instead.
"""

__all__ = [
    "YmextError", "InvalidStructure", "DomainMismatch", "NotSurjective",
    "NotInvariant", "SearchBudgetExceeded", "ZeroExcluded",
    "CoreDisagreement", "OverlapViolation", "IncompatibleQuotient",
    "NotGaunt", "EmptyConnHat", "NotInjectiveInvariant",
    "ZeroDecomposition", "BaseNotInjective", "NotCoherentInput",
    "InvalidExtension", "ParseError", "ResolutionError", "UsageError",
]


class YmextError(ValueError):
    """Base class of all engine errors."""


class InvalidStructure(YmextError):
    """A finite structure failed its constructor validity check."""


class DomainMismatch(YmextError):
    """Two maps are not composable, or a set is not where it should be."""


class NotSurjective(YmextError):
    """A map has an empty fiber, so it has no section."""


class NotInvariant(YmextError):
    """A subset is not invariant under a group action."""


class SearchBudgetExceeded(YmextError, RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what, size, budget):
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(
            f"{what}: search size {size} exceeds budget {budget}")


class ZeroExcluded(YmextError):
    """The basepoint would leave the correction subspace."""


class CoreDisagreement(YmextError):
    """Coproduct components disagree on a shared point."""


class OverlapViolation(YmextError):
    """Coproduct domains overlap outside the mandatory core."""


class IncompatibleQuotient(YmextError):
    """The preorder is not compatible with the isomorphism relation."""


class NotGaunt(YmextError):
    """The class has a non-identity isomorphism."""


class EmptyConnHat(YmextError):
    """There is nothing to gauge fix."""


class NotInjectiveInvariant(YmextError):
    """A domain is not an injective invariant subset for a functional."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ZeroDecomposition(YmextError):
    """The functional does not vanish at the basepoint."""


class BaseNotInjective(YmextError):
    """The functional is not quotient-injective on the mandatory core."""


class NotCoherentInput(YmextError):
    """Input is not injective, complete and small."""


class InvalidExtension(YmextError):
    """An extension failed validation where a valid one is required."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class ParseError(YmextError):
    """Malformed instance text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column else ")")
        super().__init__(message + where)


class ResolutionError(YmextError):
    """An instance declaration refers to something that does not resolve."""

    def __init__(self, message, name=None, line=None):
        self.name = name
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(message + where)


class UsageError(YmextError):
    """Bad command line."""
