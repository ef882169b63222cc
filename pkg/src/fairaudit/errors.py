"""Exception types shared across the toolkit."""


class FairauditError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FairauditError, ValueError):
    """Malformed or out-of-contract input (bad labels, bad schema, bad file)."""


class AuditError(FairauditError):
    """The audit cannot proceed on this data (e.g. nothing to compare)."""


class TreeValidationError(FairauditError):
    """A decision tree document violates structural rules.

    Carries every violation found, not just the first one.
    """

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid tree: " + "; ".join(self.violations))


class SessionError(FairauditError):
    """A traversal operation was applied in the wrong session state."""


class InvalidChoiceError(SessionError):
    """An answer label does not match any outgoing edge of the current node."""

    def __init__(self, choice: str, valid_choices: list[str]):
        self.choice = choice
        self.valid_choices = list(valid_choices)
        super().__init__(
            f"unknown choice {choice!r}; valid choices: {', '.join(self.valid_choices)}"
        )


class SessionCompleteError(SessionError):
    """The session already reached a definition; no further answers accepted."""


class IncompleteSessionError(SessionError):
    """A decision record was requested before the session reached a definition."""
