from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import stats

from lab_common.errors import ContractError, EmptySampleError

Cdf = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    samples: np.ndarray
    n: int

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        out = np.searchsorted(self.samples, x, side="right") / self.n
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class ComparisonReport:
    delta: float
    n: int
    L: Optional[int]
    dk_critical: float
    allowance: float = 0.0

    @property
    def passed(self) -> bool:
        return self.delta <= self.dk_critical + self.allowance

    def to_dict(self) -> dict:
        out = asdict(self)
        out["pass"] = self.passed
        return out


def empirical_cdf(samples: Sequence[float]) -> EmpiricalCdf:
    arr = np.sort(np.asarray(samples, dtype=float).ravel())
    if arr.size == 0:
        raise EmptySampleError("empirical_cdf needs at least one sample")
    return EmpiricalCdf(samples=arr, n=int(arr.size))


def dk_critical(n: int, alpha: float = 0.01) -> float:
    """Distribution-free critical value of the one-sample Kolmogorov statistic at level alpha."""
    return float(stats.kstwo.ppf(1.0 - alpha, n))


def _evaluate(theory: Cdf, xs: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(theory(xs), dtype=float)
        if out.shape == xs.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(theory(float(x))) for x in xs])


def _check_monotone(values: np.ndarray) -> None:
    if np.any(values < -1e-12) or np.any(values > 1 + 1e-12):
        raise ContractError("theory CDF left [0, 1] on the sample points")
    if np.any(np.diff(values) < -1e-12):
        raise ContractError("theory CDF is decreasing on the sample points")


def max_cdf_distance(
    emp: EmpiricalCdf, theory: Cdf, L: Optional[int] = None, alpha: float = 0.01, allowance: float = 0.0
) -> ComparisonReport:
    """
    sup |F_n - F| over jump points, using both one-sided values at each jump:
    F_n(x) against F(x) and F_n(x-) against F(x-).
    """
    xs, counts = np.unique(emp.samples, return_counts=True)
    f = _evaluate(theory, xs)
    f_left = _evaluate(theory, np.nextafter(xs, -np.inf))
    _check_monotone(f)
    after = np.cumsum(counts) / emp.n
    before = after - counts / emp.n
    delta = float(max(np.max(np.abs(after - f)), np.max(np.abs(before - f_left))))
    return ComparisonReport(delta=delta, n=emp.n, L=L, dk_critical=dk_critical(emp.n, alpha), allowance=allowance)


def max_cdf_distance_lattice(
    samples: Sequence[int], theory: Cdf, L: Optional[int] = None, alpha: float = 0.01, allowance: float = 0.0
) -> ComparisonReport:
    """
    Integer-valued samples against a continuum CDF: P(X <= k) is compared with
    F(k + 1/2) for every k between the extremes.
    """
    emp = empirical_cdf(samples)
    lo, hi = int(math.floor(emp.samples[0])) - 1, int(math.ceil(emp.samples[-1]))
    ks = np.arange(lo, hi + 1, dtype=float)
    f = _evaluate(theory, ks + 0.5)
    _check_monotone(f)
    delta = float(np.max(np.abs(emp(ks) - f)))
    return ComparisonReport(delta=delta, n=emp.n, L=L, dk_critical=dk_critical(emp.n, alpha), allowance=allowance)
