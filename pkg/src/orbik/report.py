"""Named pass/fail checks collected into JSON-ready reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(x: Any) -> Any:
    """Exact values to JSON: Fractions become ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


@dataclass
class Check:
    name: str
    passed: bool
    lhs: Any = None
    rhs: Any = None
    note: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": bool(self.passed), "lhs": jsonable(self.lhs), "rhs": jsonable(self.rhs)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    case: Any = None
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, lhs=None, rhs=None, note: str | None = None) -> Check:
        c = Check(name, bool(passed), lhs, rhs, note)
        self.checks.append(c)
        return c

    def expect_equal(self, name: str, lhs, rhs, note: str | None = None) -> Check:
        return self.add(name, lhs == rhs, lhs, rhs, note)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        out = {"case": jsonable(self.case), "checks": [c.to_json() for c in self.checks], "pass": self.ok}
        if self.notes:
            out["notes"] = list(self.notes)
        return out
