import json

import pandas as pd
import pytest

from lab_common.errors import InvalidParameterError
from verification import CHECKS, SCALES, CheckContext, run_checks, summarise
from verification.checks import check_bulk_fates, check_pde_certificates, check_sle_endpoints
from verification.run import FINDING_COLUMNS

EVIDENCE_KEYS = {"sources", "primary_keys", "values", "thresholds", "explanation"}


@pytest.fixture(scope="module")
def analytic_findings() -> pd.DataFrame:
    return run_checks(["cft", "const-i", "appendix", "loewner-oracle", "kappa4"])


def test_analytic_checks_pass(analytic_findings):
    failed = analytic_findings[analytic_findings["status"] != "PASS"]
    assert failed.empty, failed[["check_code", "subject", "message"]].to_string()
    assert list(analytic_findings.columns) == FINDING_COLUMNS
    assert {
        "CFT_CONSTANTS",
        "CONST_I_TABULATED",
        "CONST_I_GAMMA",
        "I_EQUALS_2J_COS",
        "F_AT_ORIGIN",
        "F_AT_PLUS_INF",
        "LOEWNER_CONSTANT_DRIVING",
        "LOEWNER_TRACE",
        "KAPPA4_RESIDUAL",
        "KAPPA4_UPPER",
        "KAPPA4_NO_SWALLOW",
    } == set(analytic_findings["check_code"])


def test_evidence_is_explainable(analytic_findings):
    for evidence in analytic_findings["evidence"]:
        assert EVIDENCE_KEYS == set(json.loads(evidence))
    assert analytic_findings["next_action"].isna().all()


def test_finding_ids_are_stable_and_distinct(analytic_findings):
    again = run_checks(["cft", "appendix"])
    merged = again.merge(analytic_findings, on=["check_code", "subject"], suffixes=("", "_first"))
    assert (merged["finding_id"] == merged["finding_id_first"]).all()
    assert analytic_findings["finding_id"].is_unique


def test_summary_counts(analytic_findings):
    summary = summarise(analytic_findings)
    assert summary["finding_count"].sum() == len(analytic_findings)
    assert set(summary["status"]) == {"PASS"}


def test_unknown_check_or_scale():
    with pytest.raises(InvalidParameterError):
        run_checks(["no-such-check"])
    with pytest.raises(InvalidParameterError):
        run_checks(["cft"], scale="huge")
    assert {"quick", "full"} == set(SCALES)
    assert len(CHECKS) == 11


@pytest.mark.slow
def test_pde_certificates_pass():
    findings = check_pde_certificates(CheckContext(scale=SCALES["quick"]))
    assert all(f.status == "PASS" for f in findings), [f.message for f in findings if f.status != "PASS"]


@pytest.mark.slow
def test_bulk_fates_pass_at_full_scale():
    findings = check_bulk_fates(CheckContext(scale=SCALES["full"]))
    assert {f.check_code for f in findings} == {"BULK_FATE", "BOUNDARY_SWALLOW", "SIMPLE_TRACE_NO_SWALLOW"}
    assert all(f.status == "PASS" for f in findings), [f.message for f in findings if f.status != "PASS"]


@pytest.mark.slow
def test_endpoint_law_passes_at_full_scale():
    findings = check_sle_endpoints(CheckContext(scale=SCALES["full"]))
    assert [f.status for f in findings] == ["PASS"], findings[0].message
