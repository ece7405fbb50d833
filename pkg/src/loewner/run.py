from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from lab_common.errors import GeometryError, InvalidParameterError
from lab_common.outputs import RunManifest, command_dir, write_csv, write_json
from lab_common.rng import stream

from .ensemble import DEFAULT_BATCH, ensemble_endpoints
from .evolve import MapChain, sample_driving, trace
from .maps import constant_driving_trace
from .params import SleParams

# endpoint comparison tolerates the time-discretization bias on top of the KS bound
ENDPOINT_ALLOWANCE = 0.01


def cmd_trace(
    kappa: float,
    step: float = 1e-3,
    t_max: float = 10.0,
    seed: int = 0,
    out: Optional[Path] = None,
    constant_driving: bool = False,
    delta: float = 1.0,
    eps_tip: float = 1e-4,
) -> int:
    params = SleParams(kappa=kappa, delta=delta, step=step, t_max=t_max, eps_tip=eps_tip, seed=seed)
    out_dir = command_dir("trace", out)

    if constant_driving:
        chain = MapChain.constant(0.0, step, params.n_steps, delta)
        driving = np.zeros(params.n_steps + 1)
    else:
        driving = sample_driving(params, params.n_steps, stream(seed, 0)).values
        chain = MapChain.from_driving(driving, step, delta)
    print(f"[loewner] trace kappa={kappa} steps={params.n_steps} constant={constant_driving}")

    tr = trace(chain, params)
    frame = pd.DataFrame({"t": tr.times, "re": tr.points.real, "im": tr.points.imag, "xi": driving})
    if constant_driving:
        exact = constant_driving_trace(tr.times, 0.0, delta)
        frame["exact_re"] = exact.real
        frame["exact_im"] = exact.imag

    ceiling = math.pi * delta
    if np.any(frame["im"] < 0) or np.any(frame["im"] > ceiling):
        raise GeometryError(f"trace left the strip 0 <= Im <= {ceiling}")

    manifest = RunManifest(command="trace", config=_echo(params, constant_driving=constant_driving), seed=seed)
    manifest.outputs.append(str(write_csv(frame, out_dir / "trace.csv")))
    manifest.write(out_dir)
    return 0


def cmd_sle_endpoints(
    kappa: float,
    n_traces: int,
    seed: int = 0,
    out: Optional[Path] = None,
    step: float = 1e-3,
    t_max: float = 25.0,
    threads: int = 1,
    mirrored: bool = False,
    batch_size: int = DEFAULT_BATCH,
) -> int:
    """Upper-boundary hitting points of n_traces SLE runs against 1 - p_up. Returns 4 when the comparison fails."""
    from stats_compare import empirical_cdf, max_cdf_distance, sle_endpoint_cdf

    if n_traces < 1:
        raise InvalidParameterError(f"n_traces must be >= 1 (got {n_traces})")
    params = SleParams(kappa=kappa, step=step, t_max=t_max, seed=seed)
    out_dir = command_dir("sle_endpoints", out)
    n_batches = -(-n_traces // batch_size)
    print(f"[loewner] kappa={kappa} traces={n_traces} batches={n_batches} threads={threads}")

    endpoints = ensemble_endpoints(params, n_traces, batch_size=batch_size, threads=threads, mirrored=mirrored)
    report = max_cdf_distance(empirical_cdf(endpoints["x_star"]), sle_endpoint_cdf(kappa), allowance=ENDPOINT_ALLOWANCE)
    payload = {"kappa": kappa, **report.to_dict()}
    if mirrored:
        payload["mirror_max_asymmetry"] = float((endpoints["x_star"] + endpoints["x_star_mirror"]).abs().max())
    print(f"[loewner] delta={report.delta:.5f} critical={report.dk_critical:.5f} pass={report.passed}")

    manifest = RunManifest(command="sle-endpoints", config=_echo(params, n_traces=n_traces, mirrored=mirrored), seed=seed)
    manifest.outputs.append(str(write_csv(endpoints, out_dir / "endpoints.csv")))
    manifest.outputs.append(str(write_json(payload, out_dir / "report.json")))
    manifest.write(out_dir)
    return 0 if report.passed else 4


def _echo(params: SleParams, **extra) -> dict:
    config = {name: getattr(params, name) for name in params.__dataclass_fields__}
    config.update(extra)
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    from dipolar_cli.cli import main as cli_main

    return cli_main(argv, commands=("trace", "sle-endpoints"), prog="python -m loewner")
