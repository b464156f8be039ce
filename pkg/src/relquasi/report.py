from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class Report:
    """Outcome of a check: failures make it fail, notes are informational."""

    title: str
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def note(self, message: str) -> None:
        self.notes.append(message)

    def to_dict(self) -> Dict[str, Any]:
        out = {"check": self.title, "passed": self.passed, "failures": list(self.failures)}
        if self.notes:
            out["notes"] = list(self.notes)
        out.update(self.data)
        return out

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.title}"]
        lines += [f"  failure: {f}" for f in self.failures]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)
