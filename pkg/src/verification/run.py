from __future__ import annotations

from dataclasses import asdict
from pathlib import Path
from typing import Iterable, Optional, Sequence

import pandas as pd

from lab_common.errors import InvalidParameterError
from lab_common.outputs import MODULES_DIR, RunManifest, write_csv

from .checks import CHECKS, SCALES, CheckContext, CheckFinding, Thresholds

FINDING_COLUMNS = [
    "check_code",
    "subject",
    "status",
    "severity",
    "message",
    "measured",
    "threshold",
    "evidence",
    "finding_id",
    "next_action",
]


def run_checks(
    selection: Optional[Iterable[str]] = None,
    scale: str = "quick",
    seed: int = 0,
    threads: int = 1,
    thresholds: Thresholds = Thresholds(),
) -> pd.DataFrame:
    names = list(selection) if selection else list(CHECKS)
    unknown = sorted(set(names) - set(CHECKS))
    if unknown:
        raise InvalidParameterError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    if scale not in SCALES:
        raise InvalidParameterError(f"scale must be one of {sorted(SCALES)} (got {scale!r})")

    ctx = CheckContext(scale=SCALES[scale], seed=seed, threads=threads, thresholds=thresholds)
    findings: list[CheckFinding] = []
    for name in names:
        batch = CHECKS[name](ctx)
        failed = sum(f.status == "FAIL" for f in batch)
        print(f"[verify] {name}: {len(batch)} findings, {failed} failed")
        findings.extend(batch)
    return pd.DataFrame([asdict(f) for f in findings], columns=FINDING_COLUMNS)


def summarise(findings: pd.DataFrame) -> pd.DataFrame:
    """Counts by check_code, severity and status."""
    if findings.empty:
        return pd.DataFrame(columns=["check_code", "severity", "status", "finding_count"])
    return (
        findings.groupby(["check_code", "severity", "status"], as_index=False)
        .size()
        .rename(columns={"size": "finding_count"})
        .sort_values(["status", "check_code"])
    )


def cmd_verify(
    checks: Optional[Sequence[str]] = None,
    scale: str = "quick",
    seed: int = 0,
    out: Optional[Path] = None,
    threads: int = 1,
) -> int:
    out_dir = Path(out) if out is not None else MODULES_DIR
    findings = run_checks(checks, scale=scale, seed=seed, threads=threads)
    summary = summarise(findings)

    manifest = RunManifest(
        command="verify", config={"checks": list(checks or CHECKS), "scale": scale, "threads": threads}, seed=seed
    )
    manifest.outputs.append(str(write_csv(findings, out_dir / "verification_findings.csv")))
    manifest.outputs.append(str(write_csv(summary, out_dir / "verification_summary.csv")))
    manifest.write(out_dir)
    print(summary.to_string(index=False))
    return 4 if (findings["status"] == "FAIL").any() else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    from dipolar_cli.cli import main as cli_main

    return cli_main(argv, commands=("verify",), prog="python -m verification")
