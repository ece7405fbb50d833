from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from lab_common.errors import InvalidParameterError
from lab_common.rng import stream

from .dynamics import binning_error, cluster_sweep
from .interface import InterfaceSample, trace_interface
from .lattice import BETA_C, build_lattice

PRODUCTION_SIZES = (10, 14, 20, 26, 40, 80)
PRODUCTION_SAMPLES = 320_000


@dataclass(frozen=True)
class RunConfig:
    L: int
    n_samples: int
    n_equilibration_sweeps: Optional[int] = None  # default 50 L
    n_decorrelation_sweeps: Optional[int] = None  # default 2 L
    seed: int = 0
    n_replicas: int = 1
    beta: float = BETA_C

    def __post_init__(self) -> None:
        if self.n_equilibration_sweeps is None:
            object.__setattr__(self, "n_equilibration_sweeps", 50 * self.L)
        if self.n_decorrelation_sweeps is None:
            object.__setattr__(self, "n_decorrelation_sweeps", 2 * self.L)
        for name in ("L", "n_samples", "n_equilibration_sweeps", "n_decorrelation_sweeps", "n_replicas"):
            if getattr(self, name) < 1:
                raise InvalidParameterError(f"{name} must be >= 1 (got {getattr(self, name)})")
        if self.seed < 0:
            raise InvalidParameterError(f"seed must be >= 0 (got {self.seed})")


@dataclass
class ExperimentResult:
    config: RunConfig
    records: pd.DataFrame  # replica, sample_index, displacement, wrapped
    energies: np.ndarray = field(repr=False)

    @property
    def samples(self) -> list[InterfaceSample]:
        kept = self.records[~self.records["wrapped"]]
        return [InterfaceSample(int(d), False) for d in kept["displacement"]]

    @property
    def displacements(self) -> np.ndarray:
        return self.records.loc[~self.records["wrapped"], "displacement"].to_numpy()

    @property
    def wrapped_rate(self) -> float:
        return float(self.records["wrapped"].mean()) if len(self.records) else 0.0

    @property
    def autocorrelation(self) -> float:
        return binning_error(self.energies)[2]


def _quota(config: RunConfig) -> list[int]:
    base, extra = divmod(config.n_samples, config.n_replicas)
    return [base + (1 if r < extra else 0) for r in range(config.n_replicas)]


def _run_replica(config: RunConfig, replica: int, target: int) -> tuple[list[dict], list[float]]:
    rng = stream(config.seed, replica)
    lattice = build_lattice(config.L, rng, config.beta)
    for _ in range(config.n_equilibration_sweeps):
        cluster_sweep(lattice, rng)
    print(f"[ising] L={config.L} replica={replica} equilibrated sweeps={config.n_equilibration_sweeps}")

    rows: list[dict] = []
    energies: list[float] = []
    kept = 0
    while kept < target:
        for _ in range(config.n_decorrelation_sweeps):
            cluster_sweep(lattice, rng)
        energies.append(lattice.energy_per_bond())
        sample = trace_interface(lattice, rng)
        rows.append(
            {
                "replica": replica,
                "sample_index": len(rows),
                "displacement": sample.displacement,
                "wrapped": sample.wrapped,
            }
        )
        kept += not sample.wrapped
    return rows, energies


def run_experiment(config: RunConfig, threads: int = 1) -> ExperimentResult:
    """Equilibrate, then alternate decorrelation sweeps and one interface trace per sample."""
    quotas = _quota(config)
    jobs = [(r, q) for r, q in enumerate(quotas) if q > 0]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda job: _run_replica(config, *job), jobs))
    else:
        parts = [_run_replica(config, r, q) for r, q in jobs]

    records = pd.DataFrame(
        [row for rows, _ in parts for row in rows], columns=["replica", "sample_index", "displacement", "wrapped"]
    )
    energies = np.asarray(parts[0][1] if parts else [], dtype=float)
    result = ExperimentResult(config=config, records=records, energies=energies)
    print(
        f"[ising] L={config.L} samples={len(result.displacements)} "
        f"wrapped_rate={result.wrapped_rate:.5f} tau_int={result.autocorrelation:.3f}"
    )
    return result
