import json

import pandas as pd

from reporting import build_verification_report, combine_outputs
from reporting.report_md import FindingRow, sort_findings
from reporting.report_pdf import build_html_and_pdf


def _finding(code: str, status: str, severity: str) -> dict:
    evidence = json.dumps(
        {
            "sources": ["test"],
            "primary_keys": {"code": code},
            "values": {"delta": 0.2},
            "thresholds": {"limit": 0.1},
            "explanation": "made up",
        }
    )
    return {
        "check_code": code,
        "subject": "s",
        "status": status,
        "severity": severity,
        "message": f"{code} message",
        "measured": 0.2,
        "threshold": 0.1,
        "evidence": evidence,
        "finding_id": "abc123def456",
        "next_action": "rerun" if status == "FAIL" else None,
    }


def test_failures_sort_first():
    rows = [
        FindingRow.from_row(_finding("A", "PASS", "HIGH")),
        FindingRow.from_row(_finding("B", "FAIL", "MEDIUM")),
        FindingRow.from_row(_finding("C", "FAIL", "HIGH")),
    ]
    assert [f.check_code for f in sort_findings(rows)] == ["C", "B", "A"]


def test_report_lists_failure_evidence(tmp_path):
    findings = tmp_path / "findings.csv"
    pd.DataFrame([_finding("SLE_ENDPOINT_LAW", "FAIL", "MEDIUM"), _finding("CFT_CONSTANTS", "PASS", "HIGH")]).to_csv(
        findings, index=False
    )
    md = build_verification_report(findings, tmp_path / "report.md", comparisons_csv=None)
    text = md.read_text()
    assert "1 of 2 checks failed." in text
    assert "## 3. Failed Checks" in text
    assert "**Next action:** rerun" in text
    assert "`limit`: 0.1" in text

    html, pdf = build_html_and_pdf(md, tmp_path / "report.html", pdf_path=None)
    assert pdf is None
    assert "badge-fail" in html.read_text()


def test_missing_findings_give_an_empty_report(tmp_path):
    md = build_verification_report(tmp_path / "absent.csv", tmp_path / "report.md", comparisons_csv=None)
    assert "No findings were found." in md.read_text()


def test_combine_outputs_tags_sources(tmp_path):
    (tmp_path / "report.json").write_text(json.dumps({"kappa": 6.0, "delta": 0.01, "n": 100, "pass": True}))
    pd.DataFrame({"L": [8, 16], "delta": [0.08, 0.04]}).to_csv(tmp_path / "deltas.csv", index=False)
    combined = combine_outputs(
        {"sle_endpoints": tmp_path / "report.json", "ising_scaling": tmp_path / "deltas.csv", "gone": tmp_path / "x.csv"},
        tmp_path / "comparisons.csv",
    )
    assert list(combined["source_module"]) == ["sle_endpoints", "ising_scaling", "ising_scaling"]
    assert (tmp_path / "comparisons.csv").exists()
