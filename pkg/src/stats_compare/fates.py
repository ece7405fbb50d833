from __future__ import annotations

from typing import Sequence

import numpy as np
import pandas as pd

from analytic_prob import p_in, p_left, p_right
from analytic_prob.fields import p_in_real
from lab_common.errors import UnsupportedRegimeError
from loewner.ensemble import DEFAULT_BATCH, driving_batch, map_batches
from loewner.evolve import Fate, evolve_points
from loewner.params import SleParams

FATES = ("swallowed", "left", "right")


def horizon_weights(w: complex, kappa: float) -> tuple[float, float, float]:
    """(P_in, P_l, P_r) at the recentred image w = f_T(z) of a point still undecided at the horizon."""
    w = complex(w)
    if w.imag == 0.0:
        inside = p_in_real(w.real, kappa)
        return (inside, 1.0 - inside, 0.0) if w.real < 0 else (inside, 0.0, 1.0 - inside)
    return p_in(w, kappa), p_left(w, kappa), p_right(w, kappa)


def resolved_fate_counts(
    points: Sequence[complex],
    params: SleParams,
    n_traces: int,
    batch_size: int = DEFAULT_BATCH,
    threads: int = 1,
) -> pd.DataFrame:
    """
    Fate counts with undecided points stopped at the horizon.

    A point still undecided at t_max contributes P_in, P_l and P_r of its image
    f_T(z) instead of a unit count. The stopped fields are martingales, so the
    resolved frequencies keep the expectation of the untruncated fates.
    """
    if params.kappa <= 4:
        raise UnsupportedRegimeError(f"stopping at the horizon needs P_in, known here for kappa > 4 (got {params.kappa})")
    pts = np.asarray(points, dtype=complex)

    def run(ids: range) -> np.ndarray:
        out = evolve_points(pts[:, None], driving_batch(params, ids), params)
        acc = np.zeros((pts.size, 4))
        for i in range(pts.size):
            kind = out.kind[i]
            acc[i, 0] = np.count_nonzero(kind == Fate.SWALLOWED)
            acc[i, 1] = np.count_nonzero(kind == Fate.LEFT)
            acc[i, 2] = np.count_nonzero(kind == Fate.RIGHT)
            live = out.image[i][kind == Fate.UNDECIDED]
            acc[i, 3] = live.size
            for w in live:
                acc[i, :3] += horizon_weights(w, params.kappa)
        return acc

    totals = sum(map_batches(run, n_traces, batch_size, threads))
    rows = []
    for p, c in zip(pts, totals):
        row = {"re": p.real, "im": p.imag, "n": n_traces}
        row.update({fate: float(c[j]) for j, fate in enumerate(FATES)})
        row["undecided"] = int(c[3])
        rows.append(row)
    return pd.DataFrame(rows)
