from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from lab_common.errors import DomainError, InvalidParameterError

EXPONENT_BAND = (-1.5, -0.5)


@dataclass(frozen=True)
class ScalingFit:
    sizes: tuple[int, ...]
    deltas: tuple[float, ...]
    exponent: float
    intercept: float
    quality: float  # rms residual of log(delta)
    within_band: bool
    decaying: bool

    def to_dict(self) -> dict:
        return asdict(self)


def scaling_fit(deltas: Sequence[tuple[int, float]], band: tuple[float, float] = EXPONENT_BAND) -> ScalingFit:
    """Least-squares slope of log delta against log L."""
    if len(deltas) < 3:
        raise InvalidParameterError(f"scaling_fit needs at least 3 sizes (got {len(deltas)})")
    sizes = np.array([float(L) for L, _ in deltas])
    values = np.array([float(d) for _, d in deltas])
    if np.any(values <= 0):
        raise DomainError("every delta must be > 0 for a log-log fit")
    logx, logy = np.log(sizes), np.log(values)
    fit = stats.linregress(logx, logy)
    resid = logy - (fit.intercept + fit.slope * logx)
    slope = float(fit.slope)
    return ScalingFit(
        sizes=tuple(int(s) for s in sizes),
        deltas=tuple(float(v) for v in values),
        exponent=slope,
        intercept=float(fit.intercept),
        quality=float(np.sqrt(np.mean(resid**2))),
        within_band=band[0] <= slope <= band[1],
        decaying=slope < -0.1,
    )
