"""Boolean check results that remember why they failed."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural check.

    `ok` is the answer; `reason` names the first failed condition (empty when
    the check passed).  Truthiness follows `ok` so verdicts drop into plain
    boolean contexts.
    """

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def passed() -> "Verdict":
        return Verdict(True)

    @staticmethod
    def failed(reason: str) -> "Verdict":
        return Verdict(False, reason)
