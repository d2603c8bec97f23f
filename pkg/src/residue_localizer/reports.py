#!/usr/bin/env python3
"""
Run reports for the command-line surface

A RunReport carries the command echo, the instance name, a list of checks
with exact value strings, and optional tables. It renders as aligned text
(tabulate when installed) or as versioned JSON.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

logger = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1

PASS_MARK = "✓"
FAIL_MARK = "✗"
INFO_MARK = "-"


@dataclass
class CheckResult:
    """passed=None marks an informational row that never fails the run"""

    name: str
    passed: Optional[bool]
    value: str

    @property
    def mark(self) -> str:
        if self.passed is None:
            return INFO_MARK
        return PASS_MARK if self.passed else FAIL_MARK

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "value": self.value}


@dataclass
class Table:
    title: str
    headers: List[str]
    rows: List[List[str]]


@dataclass
class RunReport:
    command: str
    instance: str
    checks: List[CheckResult] = field(default_factory=list)
    tables: List[Table] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, passed: Optional[bool], value: Any) -> CheckResult:
        result = CheckResult(name, passed, str(value))
        self.checks.append(result)
        return result

    def info(self, name: str, value: Any) -> CheckResult:
        return self.check(name, None, value)

    def table(self, title: str, headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> Table:
        table = Table(title, list(headers), [[str(cell) for cell in row] for row in rows])
        self.tables.append(table)
        return table

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.passed is False]

    @property
    def exit_status(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": self.command,
            "instance": self.instance,
            "checks": [c.to_dict() for c in self.checks],
            "tables": [{"title": t.title, "headers": t.headers, "rows": t.rows} for t in self.tables],
            "details": self.details,
            "exit_status": self.exit_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [f"{self.command}: {self.instance}"]
        for key, value in self.details.items():
            if isinstance(value, (dict, list)):
                continue  # JSON only
            lines.append(f"  {key}: {value}")
        if self.checks:
            lines.append("")
            lines.append(format_table([[c.mark, c.name, c.value] for c in self.checks], ["", "check", "value"]))
        for table in self.tables:
            lines.append("")
            lines.append(table.title)
            lines.append(format_table(table.rows, table.headers))
        lines.append("")
        if self.failed:
            lines.append(f"{FAIL_MARK} {len(self.failed)} check(s) failed")
        else:
            lines.append(f"{PASS_MARK} all checks passed")
        return "\n".join(lines)


def format_table(rows: Sequence[Sequence[str]], headers: Sequence[str]) -> str:
    """Aligned text table; plain pipe-separated rows when tabulate is missing"""
    if not rows:
        return "(no rows)"
    try:
        from tabulate import tabulate

        return tabulate(rows, headers=list(headers), tablefmt="psql", disable_numparse=True)
    except ImportError:
        widths = [len(h) for h in headers]
        for row in rows:
            widths = [max(w, len(str(cell))) for w, cell in zip(widths, row)]
        rule = "-" * (sum(widths) + 3 * (len(widths) - 1))
        out = [" | ".join(h.ljust(w) for h, w in zip(headers, widths)), rule]
        for row in rows:
            out.append(" | ".join(str(cell).ljust(w) for cell, w in zip(row, widths)))
        return "\n".join(out)
