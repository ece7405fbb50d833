import json

import numpy as np
import pandas as pd
import pytest

from dipolar_cli.cli import EXIT_DOMAIN, EXIT_INVALID, EXIT_OK, build_parser, main

GRID = "-1:1:3,0:3.14159265358979:3"


def test_field_partition(tmp_path):
    assert main(["field", "--kappa", "6", "--grid", GRID, "--out", str(tmp_path)]) == EXIT_OK
    table = pd.read_csv(tmp_path / "field.csv").dropna()
    assert len(table) == 8
    np.testing.assert_allclose(table["p_left"] + table["p_right"] + table["p_in"], 1.0, atol=1e-7)
    constants = json.loads((tmp_path / "constants.json").read_text())
    assert constants["I"] == pytest.approx(constants["I_beta"], rel=1e-9)
    assert {"J", "F_origin", "c", "h12", "h0half"} <= set(constants)
    assert (tmp_path / "manifest.json").exists()


def test_field_at_four_never_swallows(tmp_path):
    assert main(["field", "--kappa", "4", "--grid", GRID, "--out", str(tmp_path)]) == EXIT_OK
    table = pd.read_csv(tmp_path / "field.csv").dropna()
    assert (table["p_in"] == 0.0).all()


def test_field_below_four_is_a_regime_error(tmp_path, capsys):
    assert main(["field", "--kappa", "3", "--grid", GRID, "--out", str(tmp_path)]) == EXIT_DOMAIN
    assert "error:" in capsys.readouterr().err


def test_invalid_parameters(tmp_path):
    assert main(["trace", "--kappa", "-1", "--out", str(tmp_path)]) == EXIT_INVALID
    assert main(["trace", "--kappa", "abc"]) == EXIT_INVALID
    assert main(["field", "--kappa", "6", "--grid", "bad", "--out", str(tmp_path)]) == EXIT_INVALID
    assert main(["sle-endpoints", "--kappa", "6", "--n-traces", "0", "--out", str(tmp_path)]) == EXIT_INVALID
    assert main(["sle-endpoints", "--kappa", "6", "--threads", "0", "--out", str(tmp_path)]) == EXIT_INVALID


def test_trace_is_deterministic(tmp_path):
    args = ["trace", "--kappa", "4", "--step", "1e-2", "--t-max", "1", "--seed", "3"]
    assert main(args + ["--out", str(tmp_path / "a")]) == EXIT_OK
    assert main(args + ["--out", str(tmp_path / "b")]) == EXIT_OK
    a = pd.read_csv(tmp_path / "a" / "trace.csv")
    b = pd.read_csv(tmp_path / "b" / "trace.csv")
    pd.testing.assert_frame_equal(a, b)
    assert list(a.columns) == ["t", "re", "im", "xi"]
    assert a["im"].between(0.0, np.pi).all()
    assert json.loads((tmp_path / "a" / "manifest.json").read_text())["seed"] == 3


def test_trace_with_constant_driving_is_the_vertical_slit(tmp_path):
    args = ["trace", "--kappa", "2", "--t-max", "1", "--constant-driving", "--out", str(tmp_path)]
    assert main(args) == EXIT_OK
    frame = pd.read_csv(tmp_path / "trace.csv").iloc[1:]
    np.testing.assert_allclose(frame["re"], frame["exact_re"], atol=1e-6)
    np.testing.assert_allclose(frame["im"], frame["exact_im"], atol=1e-6)


def test_seed_defaults_to_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("DIPOLAR_SEED", "5")
    args = ["trace", "--kappa", "2", "--step", "1e-2", "--t-max", "0.5", "--out", str(tmp_path)]
    assert main(args) == EXIT_OK
    assert json.loads((tmp_path / "manifest.json").read_text())["seed"] == 5
    monkeypatch.setenv("DIPOLAR_SEED", "-2")
    assert main(args) == EXIT_INVALID


def test_sle_endpoints_report(tmp_path, monkeypatch):
    monkeypatch.delenv("DIPOLAR_SEED", raising=False)
    args = ["sle-endpoints", "--kappa", "6", "--n-traces", "3", "--step", "1e-2", "--t-max", "25", "--mirrored"]
    assert main(args + ["--out", str(tmp_path)]) in (0, 4)
    report = json.loads((tmp_path / "report.json").read_text())
    assert {"kappa", "delta", "n", "dk_critical", "allowance", "pass", "mirror_max_asymmetry"} <= set(report)
    assert report["n"] == 3
    assert report["mirror_max_asymmetry"] <= 3e-3
    endpoints = pd.read_csv(tmp_path / "endpoints.csv")
    assert list(endpoints.columns) == ["seed", "stream_id", "x_star", "x_star_mirror"]
    assert (endpoints["seed"] == 0).all()
    assert list(endpoints["stream_id"]) == [0, 1, 2]


def test_sle_endpoints_short_horizon_is_a_domain_error(tmp_path):
    args = ["sle-endpoints", "--kappa", "6", "--n-traces", "2", "--step", "1e-2", "--t-max", "1"]
    assert main(args + ["--out", str(tmp_path)]) == EXIT_DOMAIN


@pytest.mark.parametrize("flag", ["--paper-scale", "--full-scale"])
def test_production_scale_flag(flag):
    assert build_parser().parse_args(["ising", "--L", "8", flag]).full_scale
    assert build_parser().parse_args(["ising-scaling", flag]).full_scale
    assert not build_parser().parse_args(["ising", "--L", "8"]).full_scale


def test_ising_small_run(tmp_path, monkeypatch):
    monkeypatch.delenv("DIPOLAR_SEED", raising=False)
    rc = main(["ising", "--L", "4", "--n-samples", "30", "--replicas", "2", "--out", str(tmp_path)])
    assert rc in (0, 4)
    samples = pd.read_csv(tmp_path / "samples.csv")
    assert (~samples["wrapped"]).sum() == 30
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["L"] == 4 and report["n"] == 30
    metadata = json.loads((tmp_path / "metadata.json").read_text())
    assert {"L", "n_samples", "seeds", "wrapped_rate", "autocorrelation_estimate"} <= set(metadata)
    assert metadata["L"] == 4 and metadata["n_samples"] == 30
    assert metadata["seeds"] == [{"seed": 0, "stream_id": 0}, {"seed": 0, "stream_id": 1}]


def test_ising_scaling_needs_three_sizes(tmp_path):
    assert main(["ising-scaling", "--L", "8,16", "--out", str(tmp_path)]) == EXIT_INVALID
    assert main(["ising", "--L", "3", "--n-samples", "5", "--out", str(tmp_path)]) == EXIT_DOMAIN


def test_verify_and_report(tmp_path):
    modules = tmp_path / "modules"
    assert main(["verify", "--checks", "cft,const-i", "--out", str(modules)]) == EXIT_OK
    findings = pd.read_csv(modules / "verification_findings.csv")
    assert set(findings["check_code"]) == {"CFT_CONSTANTS", "CONST_I_TABULATED", "CONST_I_GAMMA"}
    assert (findings["status"] == "PASS").all()

    assert main(["verify", "--checks", "nope", "--out", str(modules)]) == EXIT_INVALID

    args = ["report", "--findings", str(modules / "verification_findings.csv"), "--out", str(tmp_path), "--no-pdf"]
    assert main(args) == EXIT_OK
    text = (tmp_path / "verification_report.md").read_text()
    assert "All checks passed." in text
    assert "CFT_CONSTANTS" in text
    assert "<table>" in (tmp_path / "verification_report.html").read_text()
    assert not (tmp_path / "verification_report.pdf").exists()


def test_package_entry_points_limit_commands(capsys):
    from loewner.run import main as loewner_main

    assert loewner_main(["field", "--kappa", "6"]) == EXIT_INVALID
    assert "invalid choice" in capsys.readouterr().err
