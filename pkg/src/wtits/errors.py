"""Exception types shared across the package."""


class InvariantViolation(Exception):
    """A structural self-check failed (group table, order axioms, dual-route
    disagreement).  These indicate corrupted input data or a bug, never a
    user mistake; the CLI maps them to exit code 3."""


class PresetError(ValueError):
    """A group preset or custom configuration violates a required invariant.
    The message names the first violated invariant."""


class ClosureBoundExceeded(PresetError):
    """Generator closure exceeded the configured element bound; the
    configuration almost certainly does not describe a finite group of the
    expected size."""


class ReducedLiftUnavailable(ValueError):
    """No member of a coset is a plain product of generators with reduced
    projection, so the partial converse test for the control-set order has
    no admissible starting element."""


class ExprParseError(ValueError):
    """An element expression failed to parse.  `position` is the character
    offset of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
