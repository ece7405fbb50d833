from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, Sequence, TypeVar

import numpy as np
import pandas as pd

from lab_common.rng import stream

from .evolve import Fate, MapChain, endpoint_on_upper_boundary, evolve_points, sample_driving
from .params import SleParams

T = TypeVar("T")

DEFAULT_BATCH = 256


def driving_batch(params: SleParams, stream_ids: Sequence[int], n_steps: int | None = None) -> MapChain:
    """One chain per stream id; row i is exactly what sample_driving gives for stream_ids[i]."""
    n = params.n_steps if n_steps is None else n_steps
    rows = [sample_driving(params, n, stream(params.seed, int(s))).values for s in stream_ids]
    return MapChain.from_driving(np.vstack(rows), params.step, params.delta)


def _batches(n_traces: int, batch_size: int) -> list[range]:
    return [range(i, min(i + batch_size, n_traces)) for i in range(0, n_traces, batch_size)]


def map_batches(
    fn: Callable[[range], T], n_traces: int, batch_size: int = DEFAULT_BATCH, threads: int = 1
) -> Iterator[T]:
    """Apply fn to consecutive stream-id ranges; results come back in stream order."""
    batches = _batches(n_traces, batch_size)
    if threads <= 1:
        return map(fn, batches)
    pool = ThreadPoolExecutor(max_workers=threads)
    try:
        return iter(list(pool.map(fn, batches)))
    finally:
        pool.shutdown(wait=True)


def ensemble_fates(
    points: Sequence[complex],
    params: SleParams,
    n_traces: int,
    batch_size: int = DEFAULT_BATCH,
    threads: int = 1,
) -> pd.DataFrame:
    """Per-point counts of Swallowed / Left / Right / Undecided over n_traces streams."""
    pts = np.asarray(points, dtype=complex)

    def run(ids: range) -> np.ndarray:
        chain = driving_batch(params, ids)
        out = evolve_points(pts[:, None], chain, params)
        return np.stack([(out.kind == f).sum(axis=1) for f in Fate], axis=1)

    counts = sum(map_batches(run, n_traces, batch_size, threads))
    rows = []
    for p, c in zip(pts, counts):
        rows.append(
            {
                "re": p.real,
                "im": p.imag,
                "n": n_traces,
                "swallowed": int(c[Fate.SWALLOWED]),
                "left": int(c[Fate.LEFT]),
                "right": int(c[Fate.RIGHT]),
                "undecided": int(c[Fate.UNDECIDED]),
            }
        )
    return pd.DataFrame(rows)


def ensemble_endpoints(
    params: SleParams,
    n_traces: int,
    batch_size: int = DEFAULT_BATCH,
    threads: int = 1,
    mirrored: bool = False,
) -> pd.DataFrame:
    """
    x* per stream id; with mirrored=True also x* of the negated driving.

    `seed` is the base seed shared by the ensemble and `stream_id` selects the
    trace, so (seed, stream_id) regenerates any row. Bisection points still
    undecided at the horizon take the side of Re f_T.
    """

    def run(ids: range) -> pd.DataFrame:
        chain = driving_batch(params, ids)
        frame = pd.DataFrame(
            {
                "seed": params.seed,
                "stream_id": list(ids),
                "x_star": np.atleast_1d(endpoint_on_upper_boundary(chain, params, undecided="sign")),
            }
        )
        if mirrored:
            frame["x_star_mirror"] = np.atleast_1d(
                endpoint_on_upper_boundary(chain.mirrored(), params, undecided="sign")
            )
        return frame

    return pd.concat(list(map_batches(run, n_traces, batch_size, threads)), ignore_index=True)


def lower_boundary_swallow_frequency(
    xs: Sequence[float], params: SleParams, n_traces: int, batch_size: int = DEFAULT_BATCH, threads: int = 1
) -> pd.DataFrame:
    """Fraction of traces swallowing the real point x (kappa > 4 compares to P_in(x))."""
    counts = ensemble_fates([complex(x, 0.0) for x in xs], params, n_traces, batch_size, threads)
    counts["frequency"] = counts["swallowed"] / counts["n"]
    return counts[["re", "n", "swallowed", "undecided", "frequency"]].rename(columns={"re": "x"})
