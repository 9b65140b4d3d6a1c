"""Validation reports shared by every validator in the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def _fmt(v) -> str:
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_fmt(a) for a in v) + ")"
    return str(v)


@dataclass(frozen=True)
class Violation:
    check: str
    witness: tuple
    detail: str = ""

    def to_dict(self) -> dict:
        return {"check": self.check, "witness": list(self.witness), "detail": self.detail}

    def __str__(self):
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.check} fails at {self.witness}{extra}"


@dataclass
class ValidationReport:
    """Outcome of checking a family of axioms on all basis tuples.

    Reports are total: every check runs even after a failure.
    """

    subject: str
    checks: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def ran(self, check: str) -> None:
        if check not in self.checks:
            self.checks.append(check)

    def fail(self, check: str, witness: tuple, detail: Any = "") -> None:
        self.ran(check)
        self.violations.append(Violation(check, tuple(witness), str(detail)))

    def expect(self, check: str, witness: tuple, lhs, rhs, render=None) -> bool:
        """Record a violation unless ``lhs == rhs``."""
        self.ran(check)
        if lhs == rhs:
            return True
        render = render or _fmt
        lhs, rhs = render(lhs), render(rhs)
        self.fail(check, witness, f"{lhs} != {rhs}")
        return False

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.ran(prefix + c)
        for v in other.violations:
            self.violations.append(Violation(prefix + v.check, v.witness, v.detail))

    def failed_checks(self) -> set[str]:
        return {v.check for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": list(self.checks),
            "violations": [v.to_dict() for v in self.violations],
        }

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: valid ({len(self.checks)} checks)"
        lines = [f"{self.subject}: INVALID ({len(self.violations)} violations)"]
        lines += [f"  {v}" for v in self.violations[:20]]
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more")
        return "\n".join(lines)
