"""Verifier reports with the JSON shape ``{check, instances, failures, rank, full_dim}``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

MAX_LISTED_FAILURES = 20


@dataclass
class Report:
    check: str
    instances: int = 0
    failures: list[Any] = field(default_factory=list)
    rank: int | None = None
    full_dim: int | None = None
    details: dict[str, Any] = field(default_factory=dict)
    failure_count: int = 0

    def fail(self, what: Any) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_LISTED_FAILURES:
            self.failures.append(what)

    @property
    def passed(self) -> bool:
        if self.failure_count or self.failures:
            return False
        if self.rank is not None and self.full_dim is not None:
            return self.rank == self.full_dim
        return True

    def to_dict(self) -> dict[str, Any]:
        out = {
            "check": self.check,
            "instances": self.instances,
            "failures": list(self.failures),
            "rank": self.rank,
            "full_dim": self.full_dim,
            "passed": self.passed,
        }
        if self.failure_count > len(self.failures):
            out["failure_count"] = self.failure_count
        if self.details:
            out["details"] = self.details
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.rank is not None:
            extra = f" rank={self.rank}/{self.full_dim}"
        return f"[{status}] {self.check}: {self.instances} instances, {self.failure_count} failures{extra}"
