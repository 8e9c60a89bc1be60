from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

SCHEMA_VERSION = "1"


class Check(str, Enum):
    FACTORIZATION = "factorization"
    POSITIVITY = "positivity"
    DESCARTES = "descartes"
    DOUBLE_ROOT = "double_root"
    TDELTA = "tdelta"


class Status(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class VerificationReport:
    q: int | None
    check: Check
    status: Status
    evidence: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status is Status.VERIFIED

    def to_json(self, timings: bool = False) -> dict[str, Any]:
        """Flat JSON object; ``millis`` is only included when asked for,
        so that repeated runs serialize byte-identically by default."""
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "q": self.q,
            "check": self.check.value,
            "status": self.status.value,
        }
        out.update(self.evidence)
        if timings:
            out["millis"] = round(self.wall_time * 1000.0, 3)
        return out
