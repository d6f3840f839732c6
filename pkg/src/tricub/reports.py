"""Check rows, reports, and the exit-code contract.

THEOREM rows fail the run (exit 1); CONJECTURE rows that fail are findings
(exit 2); anything undecided is inconclusive (exit 3); otherwise exit 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

THEOREM = "THEOREM"
CONJECTURE = "CONJECTURE"
INFO = "INFO"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

EXIT_OK = 0
EXIT_THEOREM_VIOLATION = 1
EXIT_CONJECTURE_VIOLATION = 2
EXIT_INCONCLUSIVE = 3


def fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


@dataclass
class Row:
    name: str
    kind: str
    lhs: object = None
    relation: str = ""
    rhs: object = None
    status: str = PASS
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "lhs": fmt(self.lhs),
            "relation": self.relation,
            "rhs": fmt(self.rhs),
            "status": self.status,
            "note": self.note,
        }


def compare(name: str, kind: str, lhs, relation: str, rhs, note: str = "") -> Row:
    """Build a row from two exact values; None on either side is inconclusive."""
    if lhs is None or rhs is None:
        return Row(name, kind, lhs, relation, rhs, INCONCLUSIVE, note)
    ok = {
        "<": lhs < rhs,
        "<=": lhs <= rhs,
        "=": lhs == rhs,
        ">=": lhs >= rhs,
    }[relation]
    return Row(name, kind, lhs, relation, rhs, PASS if ok else FAIL, note)


@dataclass
class Report:
    graph_id: str
    source: str
    rows: list[Row] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def add(self, row: Optional[Row]) -> None:
        if row is not None:
            self.rows.append(row)

    def extend(self, other: "Report") -> None:
        self.rows.extend(other.rows)
        self.values.update(other.values)

    @property
    def exit_code(self) -> int:
        return exit_code(self.rows)

    def as_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "source": self.source,
            "values": {k: fmt(v) if not isinstance(v, (list, dict, bool)) else v for k, v in sorted(self.values.items())},
            "rows": [r.as_dict() for r in self.rows],
            "exit_code": self.exit_code,
        }

    def as_text(self) -> str:
        lines = [f"graph {self.source} ({self.graph_id})"]
        for k, v in sorted(self.values.items()):
            lines.append(f"  {k:<14} {fmt(v) if not isinstance(v, (list, dict)) else v}")
        if self.rows:
            table = [("check", "kind", "lhs", "rel", "rhs", "status")]
            table += [(r.name, r.kind, fmt(r.lhs), r.relation, fmt(r.rhs), r.status.upper()) for r in self.rows]
            widths = [max(len(row[i]) for row in table) for i in range(6)]
            for row in table:
                lines.append("  " + "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
            for r in self.rows:
                if r.note:
                    lines.append(f"  note[{r.name}]: {r.note}")
        return "\n".join(lines)


def exit_code(rows) -> int:
    rows = list(rows)
    if any(r.kind == THEOREM and r.status == FAIL for r in rows):
        return EXIT_THEOREM_VIOLATION
    if any(r.kind == CONJECTURE and r.status == FAIL for r in rows):
        return EXIT_CONJECTURE_VIOLATION
    if any(r.status == INCONCLUSIVE for r in rows):
        return EXIT_INCONCLUSIVE
    return EXIT_OK
