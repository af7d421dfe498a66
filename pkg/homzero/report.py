"""
The result of one command, rendered for people or as JSON.
"""
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, List

from blessed import Terminal

from homzero.abelian import AbelianGroupClass
from homzero.formats import dump_json, load_json
from homzero.signals import budget_exhausted

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: str
    digest: str = ""
    # format string for a group label, e.g. "H_{n}^0(S,A)"
    label: str = "H_{n}"
    route: str = ""
    groups: Dict[int, AbelianGroupClass] = field(default_factory=dict)
    verdicts: Dict[str, Any] = field(default_factory=dict)
    verified: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "digest": self.digest,
            "label": self.label,
            "route": self.route,
            "groups": {str(n): g.as_dict() for n, g in sorted(self.groups.items())},
            "verdicts": dict(sorted(self.verdicts.items())),
            "verified": list(self.verified),
            "warnings": list(self.warnings),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return dump_json(self.as_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(
            command=data["command"],
            digest=data["digest"],
            label=data["label"],
            route=data["route"],
            groups={int(n): AbelianGroupClass.from_dict(g) for n, g in data["groups"].items()},
            verdicts=dict(data["verdicts"]),
            verified=list(data["verified"]),
            warnings=list(data["warnings"]),
            notes=list(data["notes"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(load_json(text, "report"))

    def render(self, term: Terminal) -> str:
        lines = [term.bold(self.command) + (f"  [{self.route}]" if self.route else "")]
        if self.digest:
            lines.append(f"input {self.digest[:16]}")
        for key, value in sorted(self.verdicts.items()):
            if value is True:
                value = term.green("yes")
            elif value is False:
                value = term.red("no")
            lines.append(f"{key}: {value}")
        for n, group in sorted(self.groups.items()):
            text = group.render()
            lines.append(f"{self.label.format(n=n)} = " + (term.cyan(text) if text != "0" else text))
        for item in self.verified:
            lines.append(term.green("verified: ") + item)
        for item in self.warnings:
            lines.append(term.yellow("warning: ") + item)
        for item in self.notes:
            lines.append("note: " + item)
        return "\n".join(lines)


@contextmanager
def collect_warnings(report: Report):
    """
    Records every budget exhaustion sent while the block runs.
    """

    def receiver(sender, budget, reason, **kwargs):
        report.warnings.append(f"{sender}: search stopped on its {reason} (budget {budget})")

    budget_exhausted.connect(receiver, weak=False)
    try:
        yield report
    finally:
        budget_exhausted.disconnect(receiver)
