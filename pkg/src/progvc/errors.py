"""Error types shared across the package.

Two failure families are kept distinct so callers (and the CLI) can map
them to different exit codes: bad mathematical input versus a search that
was stopped by a configured cap.
"""

from __future__ import annotations


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ResourceLimitError(RuntimeError):
    """A configured cap was exceeded before the result could be certified.

    ``partial`` optionally carries the best certified partial answer, e.g.
    a lower bound for a dimension search that was cut short.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
