"""
Resource guards for the desk-scale algorithms.

Exhaustive routines (transversal enumeration, Hochster subset sweeps, cycle
enumeration) are exponential; each one checks its input size or running work
against a cap before committing to it and raises `ResourceLimitError` instead
of running away.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)


class ResourceLimitError(RuntimeError):
    """Raised when a computation would exceed a configured cap."""

    def __init__(self, what: str, limit: int, actual: int):
        self.what = what
        self.limit = limit
        self.actual = actual
        super().__init__(f"{what}: {actual} exceeds the configured limit of {limit}")


def ensure_within(what: str, actual: int, limit: int) -> None:
    """Raise `ResourceLimitError` if `actual` is above `limit`."""
    if actual > limit:
        logger.warning(f"Resource limit hit: {what} = {actual} > {limit}")
        raise ResourceLimitError(what, limit, actual)


@dataclass
class WorkBudget:
    """
    Running counter of intermediate objects produced by one computation.
    `charge(n)` adds `n` and raises once the total passes `limit`.
    """

    what: str
    limit: int
    spent: int = 0

    def charge(self, n: int = 1) -> None:
        self.spent += n
        ensure_within(self.what, self.spent, self.limit)
