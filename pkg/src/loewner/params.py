from __future__ import annotations

import math
from dataclasses import dataclass

from lab_common.errors import InvalidParameterError


@dataclass(frozen=True)
class SleParams:
    """
    Parameters of one dipolar SLE simulation.

    Lengths are in strip units of width pi*delta; escape_threshold is measured
    after rescaling to delta = 1.
    """

    kappa: float
    delta: float = 1.0
    step: float = 1e-3
    t_max: float = 25.0
    eps_tip: float = 1e-4
    eps_swallow: float = 1e-9
    escape_threshold: float = 20.0
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("kappa", "delta", "step", "eps_tip", "eps_swallow", "escape_threshold"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise InvalidParameterError(f"{name} must be > 0 (got {v})")
        if not math.isfinite(self.t_max) or self.t_max < self.step:
            raise InvalidParameterError(f"t_max must be >= step (got t_max={self.t_max}, step={self.step})")
        if self.seed < 0 or self.seed >= 2**64:
            raise InvalidParameterError(f"seed must be a 64-bit unsigned integer (got {self.seed})")

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.t_max / self.step)))
