"""Tiny pass/fail report container used by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    details: str = ""


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, details: str = "") -> None:
        self.checks.append(Check(name, bool(passed), details))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "details": c.details}
                for c in self.checks
            ],
        }
