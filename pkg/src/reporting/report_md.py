from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from datetime import date
from pathlib import Path
from typing import Optional

import pandas as pd

from lab_common.outputs import MODULES_DIR, OUTPUTS_DIR, tool_version

report_date = date.today().strftime("%d %b %Y")

FINDINGS_CSV = MODULES_DIR / "verification_findings.csv"
COMPARISONS_CSV = OUTPUTS_DIR / "comparisons.csv"
REPORT_MD_PATH = OUTPUTS_DIR / "verification_report.md"

SEVERITY_RANK = {"HIGH": 0, "MEDIUM": 1, "LOW": 2}


# ---------- Data models ----------

@dataclass
class FindingRow:
    check_code: str
    subject: str
    status: str
    severity: str
    message: str
    measured: Optional[float]
    threshold: Optional[float]
    evidence: str
    finding_id: str
    next_action: str

    @classmethod
    def from_row(cls, row: dict) -> "FindingRow":
        def num(key: str) -> Optional[float]:
            value = row.get(key)
            return None if value is None or pd.isna(value) else float(value)

        def text(key: str) -> str:
            value = row.get(key)
            return "" if value is None or (isinstance(value, float) and pd.isna(value)) else str(value)

        return cls(
            check_code=text("check_code"),
            subject=text("subject"),
            status=text("status").upper(),
            severity=text("severity").upper(),
            message=text("message"),
            measured=num("measured"),
            threshold=num("threshold"),
            evidence=text("evidence"),
            finding_id=text("finding_id"),
            next_action=text("next_action"),
        )


def load_findings(path: Path = FINDINGS_CSV) -> list[FindingRow]:
    if not path.exists():
        return []
    frame = pd.read_csv(path)
    return [FindingRow.from_row(r) for r in frame.to_dict(orient="records")]


def sort_findings(findings: list[FindingRow]) -> list[FindingRow]:
    """FAIL before PASS, then severity, then check code and subject."""
    return sorted(
        findings,
        key=lambda f: (f.status != "FAIL", SEVERITY_RANK.get(f.severity, 99), f.check_code, f.subject),
    )


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.4g}"


# ---------- Markdown section builders ----------

def build_header(title: str) -> str:
    return f"""# {title}

**Tool version:** {tool_version()}
**Report prepared as at:** {report_date}

> This report lists the outcome of every acceptance check run against the dipolar SLE and Ising code. Statistical checks depend on the sample scale chosen for the run.

---
"""


def build_executive_summary(findings: list[FindingRow]) -> str:
    total = len(findings)
    failed = [f for f in findings if f.status == "FAIL"]
    high = sum(1 for f in failed if f.severity == "HIGH")
    med = sum(1 for f in failed if f.severity == "MEDIUM")
    verdict = "All checks passed." if not failed else f"{len(failed)} of {total} checks failed."

    return f"""## 1. Executive Summary

{total} checks were evaluated across {len({f.check_code for f in findings})} check types. {verdict}

**Failures by severity**

- High (analytic identities): {high}
- Medium (statistical comparisons): {med}

---
"""


def build_check_table(findings: list[FindingRow]) -> str:
    if not findings:
        return """## 2. Checks

No findings were found. Run `python -m dipolar_cli verify` first.

---
"""
    lines = [
        "## 2. Checks",
        "",
        "| Status | Severity | Check | Subject | Measured | Threshold |",
        "|--------|----------|-------|---------|----------|-----------|",
    ]
    for f in findings:
        badge = f'<span class="badge-{f.status.lower()}">{f.status}</span>'
        lines.append(
            f"| {badge} | {f.severity} | `{f.check_code}` | {f.subject} | {_fmt(f.measured)} | {_fmt(f.threshold)} |"
        )
    lines += ["", "---", ""]
    return "\n".join(lines)


def build_failure_details(findings: list[FindingRow]) -> str:
    failed = [f for f in findings if f.status == "FAIL"]
    if not failed:
        return ""
    lines = ["## 3. Failed Checks", ""]
    for idx, f in enumerate(failed, start=1):
        lines.append(f"### {idx}. {f.check_code} ({f.subject})")
        lines.append(f"**Severity:** {f.severity}  ")
        lines.append(f"**Finding ID:** `{f.finding_id}`")
        lines.append("")
        lines.append(f.message)
        lines.append("")
        lines.append("**Evidence**")
        lines.append("")
        try:
            payload = json.loads(f.evidence) if f.evidence else {}
        except ValueError:
            payload = {}
        for key in ("primary_keys", "values", "thresholds"):
            for name, value in (payload.get(key) or {}).items():
                lines.append(f"- {key.replace('_', ' ')} / `{name}`: {value}")
        if payload.get("explanation"):
            lines.append(f"- {payload['explanation']}")
        lines.append("")
        if f.next_action:
            lines.append(f"**Next action:** {f.next_action}")
            lines.append("")
    lines += ["---", ""]
    return "\n".join(lines)


def build_comparisons(comparisons: Optional[pd.DataFrame]) -> str:
    if comparisons is None or comparisons.empty:
        return ""
    cols = [c for c in ("source_module", "kappa", "L", "n", "delta", "dk_critical", "pass") if c in comparisons.columns]
    lines = ["## 4. Command Comparisons", "", "| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for row in comparisons[cols].itertuples(index=False):
        lines.append("| " + " | ".join("" if pd.isna(v) else (f"{v:.4g}" if isinstance(v, float) else str(v)) for v in row) + " |")
    lines += ["", "---", ""]
    return "\n".join(lines)


def build_limitations() -> str:
    return """## 5. Limitations

- Loewner evolutions are discretized with a fixed step; endpoint comparisons carry an allowance for the resulting bias.
- Ising comparisons use finite strips; the distance to the continuum law shrinks roughly as 1/L but is never zero.
- Quick-scale runs use small samples; a statistical FAIL there is a prompt to rerun at full scale, not proof of a defect.

---
"""


def build_thresholds_appendix() -> str:
    from verification.checks import Thresholds

    defaults = Thresholds()
    lines = ["## Appendix: Thresholds", "", "| Name | Value |", "|------|-------|"]
    for f in fields(Thresholds):
        lines.append(f"| `{f.name}` | {asdict(defaults)[f.name]} |")
    lines.append("")
    return "\n".join(lines)


# ---------- Orchestrator ----------

def build_verification_report(
    findings_csv: Path = FINDINGS_CSV,
    out_md: Path = REPORT_MD_PATH,
    comparisons_csv: Optional[Path] = COMPARISONS_CSV,
    title: str = "Dipolar SLE Lab Verification Report",
) -> Path:
    findings = sort_findings(load_findings(findings_csv))
    comparisons = pd.read_csv(comparisons_csv) if comparisons_csv is not None and comparisons_csv.exists() else None

    parts = [
        build_header(title),
        build_executive_summary(findings),
        build_check_table(findings),
        build_failure_details(findings),
        build_comparisons(comparisons),
        build_limitations(),
        build_thresholds_appendix(),
    ]
    out_md.parent.mkdir(parents=True, exist_ok=True)
    out_md.write_text("\n".join(p for p in parts if p), encoding="utf-8")
    print(f"Wrote: {out_md}")
    return out_md
