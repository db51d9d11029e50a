"""Exception types shared across the package.

Every validation failure derives from :class:`JSRayError`, which is itself a
``ValueError`` so callers that only care about "bad input" can catch that.
"""


class JSRayError(ValueError):
    """Base class for input-validation failures."""


class NonPositiveDatum(JSRayError):
    pass


class PartitionError(JSRayError):
    pass


class PairingError(JSRayError):
    pass


class FamilyMismatch(JSRayError):
    pass


class NegativeTime(JSRayError):
    pass


class ZeroInput(JSRayError):
    pass


class DomainError(JSRayError):
    pass


class LengthMismatch(JSRayError):
    pass


class NonPositiveEntry(JSRayError):
    pass


class AllZero(JSRayError):
    pass


class EmptySample(JSRayError):
    pass


class InconsistentFlags(JSRayError):
    pass


class DegenerateMap(JSRayError):
    pass


class OutOfDomain(JSRayError):
    pass


class ValidityThresholdNotMet(JSRayError):
    pass


class SpecSyntaxError(JSRayError):
    """Malformed line in a surface-spec file."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class SpecSemanticError(JSRayError):
    """Well-formed spec text that violates a model invariant."""

    def __init__(self, line, message):
        self.line = line
        where = f"line {line}: " if line else ""
        super().__init__(f"{where}{message}")


class NormalizationError(JSRayError):
    pass


class IntersectingSupport(JSRayError):
    pass


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; this is a bug, not bad input."""
