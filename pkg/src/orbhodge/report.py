"""Structured check results.

Mathematical verifications in this package never raise on a failed axiom;
they return a Report listing what was checked and what broke, with exact
witnesses (a minor index, a degree, a sector id, a lattice point).
Exceptions are reserved for malformed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
WARN = "warn"


@dataclass(frozen=True)
class CheckItem:
    check_id: str
    status: str
    witness: object = None

    def as_dict(self) -> dict:
        d = {"check": self.check_id, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    items: list = field(default_factory=list)

    def add(self, check_id: str, status: str, witness=None) -> None:
        self.items.append(CheckItem(check_id, status, witness))

    def passed(self, check_id: str, witness=None) -> None:
        self.add(check_id, PASS, witness)

    def failed(self, check_id: str, witness=None) -> None:
        self.add(check_id, FAIL, witness)

    def warned(self, check_id: str, witness=None) -> None:
        self.add(check_id, WARN, witness)

    def merge(self, other: "Report", prefix: str = "") -> None:
        for item in other.items:
            name = f"{prefix}{item.check_id}" if prefix else item.check_id
            self.items.append(CheckItem(name, item.status, item.witness))

    def failures(self) -> list:
        return [i for i in self.items if i.status == FAIL]

    def warnings(self) -> list:
        return [i for i in self.items if i.status == WARN]

    def ok(self) -> bool:
        """True when nothing failed (warnings allowed)."""
        return not self.failures()

    def verdict(self) -> str:
        if self.failures():
            return "fail"
        if self.warnings():
            return "caveat"
        return "pass"

    def as_dicts(self) -> list:
        return [i.as_dict() for i in self.items]

    def __str__(self) -> str:
        return "\n".join(
            f"[{i.status.upper():4}] {i.check_id}" + (f"  {i.witness}" if i.witness is not None else "")
            for i in self.items
        )
