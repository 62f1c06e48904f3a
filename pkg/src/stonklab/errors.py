"""Typed errors shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; report code relies on catching these rather than inspecting
messages. All are ValueError subclasses so generic validation handling
still works.
"""


class DegenerateSeriesError(ValueError):
    """A statistic is undefined because an input has no variation."""


class AlignmentError(ValueError):
    """Two series share no usable dates."""


class SeriesTooShortError(ValueError):
    """A transform or test needs more observations than provided."""


class SingularMatrixError(ValueError):
    """Design matrix is rank-deficient within tolerance."""


class DomainError(ValueError):
    """Argument outside a special function's domain."""


class InputFormatError(ValueError):
    """An input file violates its documented format."""


class MissingLabelError(ValueError):
    """Posts lack externally supplied sentiment labels."""

    def __init__(self, missing_ids):
        self.missing_ids = tuple(missing_ids)
        shown = ", ".join(self.missing_ids[:10])
        suffix = ", ..." if len(self.missing_ids) > 10 else ""
        super().__init__(
            f"no label for {len(self.missing_ids)} post id(s): {shown}{suffix}"
        )
