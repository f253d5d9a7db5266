"""
Exception hierarchy for the certification toolkit.

Every error carries the process exit code the CLI maps it to:
usage errors exit 2, operational errors exit 1.
"""


class CertificationError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1


class UsageError(CertificationError):
    """The caller asked for something that does not exist or is malformed."""

    exit_code = 2


# ============================================================================
# Exact core
# ============================================================================

class NonExactDivision(ArithmeticError, CertificationError):
    """A polynomial division left a remainder.

    Pivot divisions in fraction-free elimination always divide exactly, so this
    signals an internal bug and must abort the computation.
    """


# ============================================================================
# Families
# ============================================================================

class UnknownFamily(UsageError):
    pass


class UnknownTriangle(UsageError):
    pass


class UnknownPreset(UsageError):
    pass


class UnknownProperty(UsageError):
    pass


class InvalidParams(UsageError):
    pass


class InvalidInputFile(CertificationError):
    pass


# ============================================================================
# Sequences and matrices
# ============================================================================

class InsufficientTerms(CertificationError):
    pass


class EmptySequence(CertificationError):
    pass


class TooShort(CertificationError):
    pass


class NotSquare(CertificationError):
    pass


class BadIndexSets(CertificationError):
    pass


class TooSmall(CertificationError):
    pass


class NotSymmetric(CertificationError):
    pass


class NonNumericEntries(CertificationError):
    """A numeric-only check received non-constant polynomial entries."""


class ShapeMismatch(CertificationError):
    pass


# ============================================================================
# Positivity and runs
# ============================================================================

class NegativeQValue(UsageError):
    pass


class CapExceeded(CertificationError):
    """A requested size exceeds a configured ceiling."""
