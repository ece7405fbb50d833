from __future__ import annotations

from dataclasses import asdict
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from lab_common.errors import InvalidParameterError
from lab_common.outputs import RunManifest, command_dir, write_csv, write_json

from .experiment import PRODUCTION_SAMPLES, PRODUCTION_SIZES, ExperimentResult, RunConfig, run_experiment

DEFAULT_SIZES = (8, 12, 16, 24)
DEFAULT_SAMPLES = 2000
# absorbs the finite-L bias of the lattice interface on top of the KS bound
ISING_ALLOWANCE = 0.05


def compare(result: ExperimentResult) -> dict:
    """Continuity-corrected and plain delta of the kept displacements against the kappa = 3 law."""
    from stats_compare import empirical_cdf, ising_theory_cdf, max_cdf_distance, max_cdf_distance_lattice

    L = result.config.L
    theory = ising_theory_cdf(L)
    lattice = max_cdf_distance_lattice(result.displacements, theory, L=L, allowance=ISING_ALLOWANCE)
    plain = max_cdf_distance(empirical_cdf(result.displacements), theory, L=L)
    out = lattice.to_dict()
    out["delta_plain"] = plain.delta
    out["wrapped_rate"] = result.wrapped_rate
    return out


def cmd_ising(
    L: int,
    n_samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    out: Optional[Path] = None,
    threads: int = 1,
    n_replicas: int = 1,
    full_scale: bool = False,
) -> int:
    if full_scale:
        n_samples = PRODUCTION_SAMPLES
    config = RunConfig(L=L, n_samples=n_samples, seed=seed, n_replicas=n_replicas)
    out_dir = command_dir(f"ising/L{L}", out)

    result = run_experiment(config, threads=threads)
    report = compare(result)
    metadata = {
        "L": config.L,
        "n_samples": config.n_samples,
        # replica r draws from stream (seed, r)
        "seeds": [{"seed": config.seed, "stream_id": r} for r in range(config.n_replicas)],
        "wrapped_rate": result.wrapped_rate,
        "autocorrelation_estimate": result.autocorrelation,
        "config": asdict(config),
        "kept_samples": int(len(result.displacements)),
        "mean_energy_per_bond": float(np.mean(result.energies)) if result.energies.size else None,
    }
    print(f"[ising] L={L} delta={report['delta']:.5f} plain={report['delta_plain']:.5f} pass={report['pass']}")

    manifest = RunManifest(command="ising", config=asdict(config), seed=seed)
    manifest.outputs.append(str(write_csv(result.records, out_dir / "samples.csv")))
    manifest.outputs.append(str(write_json(metadata, out_dir / "metadata.json")))
    manifest.outputs.append(str(write_json(report, out_dir / "report.json")))
    manifest.write(out_dir)
    return 0 if report["pass"] else 4


def cmd_ising_scaling(
    sizes: Sequence[int] = DEFAULT_SIZES,
    n_samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    out: Optional[Path] = None,
    threads: int = 1,
    n_replicas: int = 1,
    full_scale: bool = False,
) -> int:
    """delta per L and the log-log slope; exit 4 when delta is not decreasing or the slope leaves the band."""
    from stats_compare import scaling_fit

    if full_scale:
        sizes, n_samples = PRODUCTION_SIZES, PRODUCTION_SAMPLES
    sizes = sorted(set(int(L) for L in sizes))
    if len(sizes) < 3:
        raise InvalidParameterError(f"ising-scaling needs at least 3 sizes (got {sizes})")
    out_dir = command_dir("ising_scaling", out)

    rows = []
    for L in sizes:
        config = RunConfig(L=L, n_samples=n_samples, seed=seed, n_replicas=n_replicas)
        rows.append(compare(run_experiment(config, threads=threads)))
    deltas = pd.DataFrame(rows, columns=["L", "n", "delta", "delta_plain", "dk_critical", "allowance", "pass", "wrapped_rate"])

    fit = scaling_fit(list(zip(deltas["L"], deltas["delta"])))
    decreasing = bool(np.all(np.diff(deltas["delta"].to_numpy()) < 0))
    payload = {
        "sizes": list(fit.sizes),
        "deltas": list(fit.deltas),
        "exponent": fit.exponent,
        "quality": fit.quality,
        "within_band": fit.within_band,
        "decaying": fit.decaying,
        "strictly_decreasing": decreasing,
    }
    print(f"[ising] scaling exponent={fit.exponent:.3f} quality={fit.quality:.3f} decreasing={decreasing}")

    manifest = RunManifest(
        command="ising-scaling", config={"sizes": sizes, "n_samples": n_samples, "n_replicas": n_replicas}, seed=seed
    )
    manifest.outputs.append(str(write_csv(deltas, out_dir / "deltas.csv")))
    manifest.outputs.append(str(write_json(payload, out_dir / "scaling.json")))
    manifest.write(out_dir)
    return 0 if (fit.within_band and decreasing) else 4


def main(argv: Optional[Sequence[str]] = None) -> int:
    from dipolar_cli.cli import main as cli_main

    return cli_main(argv, commands=("ising", "ising-scaling"), prog="python -m ising_lab")
