from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class VerificationReport:
    """Pass/fail record for one claim, with failing witnesses and extra data."""

    claim: str
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **witness: Any) -> None:
        self.failures.append(witness)

    def expect(self, condition: bool, **witness: Any) -> bool:
        self.checked += 1
        if not condition:
            self.failures.append(witness)
        return condition

    def as_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            **({"details": self.details} if self.details else {}),
        }

    def __bool__(self) -> bool:
        return self.passed
