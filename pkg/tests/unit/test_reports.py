#!/usr/bin/env python3
"""
Unit tests for run reports and table formatting
"""
import json
import sys

import pytest

from residue_localizer.reports import RunReport, format_table

pytestmark = pytest.mark.unit


@pytest.fixture
def report():
    report = RunReport("residue", "cp2", details={"dim": 2})
    report.check("f_c1*c2 vanishes", True, 0)
    report.info("trace sum", "0")
    return report


class TestRunReport:
    def test_exit_status(self, report):
        assert report.exit_status == 0
        report.check("pairing", False, "violated at 1")
        assert report.exit_status == 1
        assert [c.name for c in report.failed] == ["pairing"]

    def test_marks(self, report):
        assert [c.mark for c in report.checks] == ["✓", "-"]

    def test_json(self, report):
        report.table("contributions", ["component", "value"], [["M1", "9/2"]])
        document = json.loads(report.to_json())
        assert document["schema_version"] == 1
        assert document["checks"][0] == {"name": "f_c1*c2 vanishes", "passed": True, "value": "0"}
        assert document["checks"][1]["passed"] is None
        assert document["tables"] == [{"title": "contributions", "headers": ["component", "value"], "rows": [["M1", "9/2"]]}]
        assert document["exit_status"] == 0

    def test_structured_details_stay_out_of_text(self, report):
        report.details["result"] = {"value": {"re": "9", "im": "0"}}
        assert "result" not in report.render_text()
        assert json.loads(report.to_json())["details"]["result"]["value"] == {"re": "9", "im": "0"}

    def test_render_text(self, report):
        text = report.render_text()
        assert text.splitlines()[0] == "residue: cp2"
        assert "  dim: 2" in text
        assert "f_c1*c2 vanishes" in text
        assert text.endswith("✓ all checks passed")

    def test_render_failure_summary(self, report):
        report.check("a", False, "1")
        report.check("b", False, "2")
        assert report.render_text().endswith("✗ 2 check(s) failed")


class TestFormatTable:
    def test_empty(self):
        assert format_table([], ["a"]) == "(no rows)"

    def test_keeps_exact_strings(self):
        text = format_table([["c1^2", "9/2"], ["c2", "-3*i"]], ["monomial", "value"])
        assert "9/2" in text
        assert "-3*i" in text

    def test_fallback_without_tabulate(self, monkeypatch):
        monkeypatch.setitem(sys.modules, "tabulate", None)
        text = format_table([["M1", "9/2"], ["M22", "0"]], ["component", "value"])
        lines = text.splitlines()
        assert lines[0] == "component | value"
        assert set(lines[1]) == {"-"}
        assert lines[2] == "M1        | 9/2  "
        assert lines[3] == "M22       | 0    "
