from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

from lab_common.outputs import OUTPUTS_DIR

from .combine import combine_outputs
from .report_md import FINDINGS_CSV, build_verification_report
from .report_pdf import build_html_and_pdf

COMPARISON_INPUTS = {
    "sle_endpoints": Path("sle_endpoints") / "report.json",
    "ising_scaling": Path("ising_scaling") / "deltas.csv",
}


def cmd_report(findings_csv: Path = FINDINGS_CSV, out: Optional[Path] = None, pdf: bool = True) -> int:
    """Report into the outputs root `out`, picking up the command comparisons already written there."""
    out_dir = Path(out) if out is not None else OUTPUTS_DIR
    inputs = {name: out_dir / rel for name, rel in COMPARISON_INPUTS.items()}
    inputs.update({f"ising_L{p.parent.name[1:]}": p for p in sorted((out_dir / "ising").glob("L*/report.json"))})
    comparisons = out_dir / "comparisons.csv"
    combine_outputs(inputs, comparisons)

    md = build_verification_report(findings_csv, out_dir / "verification_report.md", comparisons)
    build_html_and_pdf(
        md_path=md,
        html_path=out_dir / "verification_report.html",
        pdf_path=out_dir / "verification_report.pdf" if pdf else None,
    )
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    from dipolar_cli.cli import main as cli_main

    return cli_main(argv, commands=("report",), prog="python -m reporting")
