"""Verdict + witness records returned by every check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
VERIFIED_UP_TO = "verified_up_to"


@dataclass(frozen=True)
class Certificate:
    """Outcome of a check.

    ``verdict`` is one of ``pass``, ``fail`` or ``verified_up_to``; in the last
    case ``window`` holds the size N of the window the claim was checked on.
    ``witness`` carries whatever data lets a caller re-verify the verdict
    (an embedding, a witness table, a counterexample pair...).
    """

    verdict: str
    route: str
    witness: dict[str, Any] = field(default_factory=dict)
    window: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def __bool__(self) -> bool:
        return self.passed

    @property
    def verdict_text(self) -> str:
        if self.verdict == VERIFIED_UP_TO:
            return f"verified_up_to({self.window})"
        return self.verdict
