from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from analytic_prob import p_left, p_up
from lab_common.errors import DomainError, InvalidParameterError, UnsupportedRegimeError
from loewner.ensemble import DEFAULT_BATCH, driving_batch, map_batches
from loewner.evolve import Fate, evolve_points
from loewner.params import SleParams


@dataclass(frozen=True)
class MartingaleReport:
    kappa: float
    z: complex
    field: str
    n_traces: int
    times: tuple[float, ...]
    means: tuple[float, ...]
    stderrs: tuple[float, ...]
    reference: float
    compatible: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["z"] = [self.z.real, self.z.imag]
        return out


def _stopped_values(kind: np.ndarray, f: np.ndarray, value: Callable[[complex], float]) -> np.ndarray:
    # swallowed points stop at P(0) = 0; escaped ones at 1 (left) / 0 (right)
    out = np.zeros(kind.shape)
    out[kind == Fate.LEFT] = 1.0
    live = np.flatnonzero(kind == Fate.UNDECIDED)
    out[live] = [value(complex(w)) for w in f[live]]
    return out


def _compatible(means: np.ndarray, errs: np.ndarray, reference: float, n_sigma: float) -> bool:
    for i in range(len(means)):
        if abs(means[i] - reference) > n_sigma * errs[i] + 1e-12:
            return False
        for j in range(i + 1, len(means)):
            if abs(means[i] - means[j]) > n_sigma * math.hypot(errs[i], errs[j]) + 1e-12:
                return False
    return True


def martingale_constancy_test(
    kappa: float,
    z: complex,
    times: Sequence[float],
    n_traces: int,
    seed: int = 0,
    field: str = "p_left",
    step: float = 1e-3,
    n_sigma: float = 3.0,
    batch_size: int = DEFAULT_BATCH,
    threads: int = 1,
) -> MartingaleReport:
    """
    Sample means of the stopped field P(f_t(z)) at the listed times; a closed
    martingale keeps them equal to P(z).
    """
    if kappa <= 4:
        raise UnsupportedRegimeError(f"the stopped P_l field is a closed martingale only for kappa > 4 (got {kappa})")
    times = tuple(float(t) for t in times)
    if not times or any(b <= a for a, b in zip(times, times[1:])) or times[0] < 0:
        raise InvalidParameterError(f"times must be non-negative and increasing (got {times})")
    z = complex(z)
    if field == "p_left":
        value: Callable[[complex], float] = lambda w: p_left(w, kappa)
    elif field == "p_up":
        if abs(z.imag - math.pi) > 1e-12:
            raise DomainError("the p_up field lives on the upper boundary; pass z = i*pi + x")
        value = lambda w: p_up(w.real, kappa)
    else:
        raise InvalidParameterError(f"unknown field {field!r}")

    params = SleParams(kappa=kappa, step=step, t_max=max(times[-1], step), seed=seed)
    ks = [int(round(t / step)) for t in times]

    def run(ids: range) -> list[np.ndarray]:
        chain = driving_batch(params, ids)
        out = evolve_points(z, chain, params, snapshots=ks)
        return [_stopped_values(*out.snapshots[k], value) for k in ks]

    parts = list(map_batches(run, n_traces, batch_size, threads))
    samples = [np.concatenate([p[i] for p in parts]) for i in range(len(ks))]
    means = np.array([s.mean() for s in samples])
    errs = np.array([s.std(ddof=1) / math.sqrt(s.size) if s.size > 1 else 0.0 for s in samples])
    reference = value(z)
    return MartingaleReport(
        kappa=kappa,
        z=z,
        field=field,
        n_traces=n_traces,
        times=times,
        means=tuple(float(m) for m in means),
        stderrs=tuple(float(e) for e in errs),
        reference=float(reference),
        compatible=_compatible(means, errs, reference, n_sigma),
    )
