"""Exception hierarchy shared by every module."""


class QuandleError(Exception):
    """Base class for all library errors."""


class MalformedInputError(QuandleError, ValueError):
    """Input data is structurally unusable (out of range, wrong shape, bad syntax).

    ``line``/``column`` are 1-based positions when the input came from text.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class AxiomError(QuandleError):
    """A table is well formed but breaks one or more quandle axioms."""

    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        super().__init__(f"{len(self.violations)} axiom violation(s); first: {first}")


class ConstructionError(QuandleError, ValueError):
    """A standard construction was given parameters it cannot use."""


class PreconditionError(QuandleError):
    """An operation's precondition does not hold for the given data."""


class HypothesisRefused(PreconditionError):
    """A theorem hypothesis was checked and failed, so no witness is produced."""

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"hypothesis failed: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class StructuralError(QuandleError):
    """Module data has the wrong shape, e.g. a non-invertible eta."""


class CocycleError(QuandleError):
    """A cocycle failed validation; ``violation`` names what broke."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class ResourceLimitError(QuandleError):
    """A search or enumeration hit its configured bound."""
