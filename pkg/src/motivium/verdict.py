from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """PASS/FAIL outcome of a checker, relative to a finite field lattice.

    ``witness`` is None on PASS; on FAIL it names the first offending field
    label plus checker-specific detail.
    """

    passed: bool
    witness: dict[str, Any] | None = None
    checked: list[str] = field(default_factory=list)
    note: str = "verdict relative to the declared finite field lattice"
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        out = {"verdict": self.status, "witness": self.witness, "checked": list(self.checked), "note": self.note}
        if self.details:
            out["details"] = self.details
        return out
