"""Error taxonomy shared by every module.

Each class carries a stable ``code`` string so the CLI can map failures to
exit codes and structured output without string-matching messages.
"""

from __future__ import annotations


class SpectraError(Exception):
    """Base class for all library errors."""

    code = "error"


class PrecisionExhausted(SpectraError):
    """A comparison could not be decided within the precision budget.

    Raised when interval refinement hits the configured bit budget while a
    quantity is neither certifiably separated nor exactly tied.
    """

    code = "precision-exhausted"


class WorkCapExceeded(SpectraError):
    """An enumeration or search outgrew its node/memory cap."""

    code = "work-cap-exceeded"


class ToleranceAmbiguity(SpectraError):
    """Numeric clustering found two sums too close to the tolerance boundary.

    The caller must change the tolerance or switch to the exact path; the
    count would otherwise depend on an arbitrary epsilon.
    """

    code = "tolerance-ambiguity"


class ZeroConstantTerm(SpectraError):
    """Operation requires a nonzero constant term (e.g. reversal)."""

    code = "zero-constant-term"


class DegreeOverflow(SpectraError):
    """Input or derived polynomial exceeds a configured degree cap."""

    code = "degree-overflow"


class NoPowerStructure(SpectraError):
    """detect_power_structure found m = 1 where m >= 2 was required."""

    code = "no-power-structure"


class EmptyTail(SpectraError):
    """The finalized spectrum prefix is too short for tail statistics."""

    code = "empty-tail"


class NotApplicable(SpectraError):
    """Preconditions of a bound or rule are not met for this input."""

    code = "not-applicable"


class InvariantViolation(SpectraError):
    """A theorem-backed internal check failed; this signals a bug."""

    code = "invariant-violation"


class UsageError(SpectraError):
    """Bad command line or malformed input text."""

    code = "usage"
