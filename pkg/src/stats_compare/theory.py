from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy import special

from analytic_prob import const_I
from lab_common.errors import InvalidParameterError

ISING_KAPPA = 3.0


def sle_endpoint_cdf(kappa: float) -> Callable[[np.ndarray], np.ndarray]:
    """x -> 1 - P_up(x): probability that the upper-boundary hitting point lies left of x."""
    a = 2.0 / kappa

    def cdf(x: np.ndarray | float) -> np.ndarray | float:
        return special.betainc(a, a, special.expit(np.asarray(x, dtype=float)))

    return cdf


def ising_theory_cdf(L: int) -> Callable[[np.ndarray], np.ndarray]:
    """Displacement x in lattice units maps to strip coordinate pi * x / L at kappa = 3."""
    if L < 1:
        raise InvalidParameterError(f"L must be >= 1 (got {L})")
    base = sle_endpoint_cdf(ISING_KAPPA)
    return lambda x: base(math.pi * np.asarray(x, dtype=float) / L)


def ising_reduced_density(x_prime: np.ndarray | float) -> np.ndarray | float:
    """Q(x') = (pi / I) cosh(pi x' / 2)^{-4/3} for x' = displacement / L."""
    return math.pi / const_I(ISING_KAPPA) * np.cosh(0.5 * math.pi * np.asarray(x_prime, dtype=float)) ** (-4.0 / 3.0)
