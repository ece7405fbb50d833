from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import special

from lab_common.errors import DomainError, UnsupportedRegimeError

from .integrals import DEFAULT_QUAD, PI, F, QuadConfig, const_I, const_J, sinh_tail


def _is_four(kappa: float) -> bool:
    return abs(kappa - 4.0) < 1e-12


def _clip01(v: float) -> float:
    return min(1.0, max(0.0, v))


@dataclass(frozen=True)
class ProbField:
    """Analytic visiting / excursion probabilities at fixed kappa. I and J are fixed at construction."""

    kappa: float
    quad: QuadConfig = DEFAULT_QUAD
    I: float = field(init=False)
    J: Optional[float] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "I", const_I(self.kappa, self.quad))
        object.__setattr__(self, "J", const_J(self.kappa, self.quad) if self.kappa > 4 else None)

    def F(self, z: complex) -> complex:
        return F(z, self.kappa, self.quad)

    def p_left(self, z: complex) -> float:
        z = _in_domain(z)
        if self.kappa < 4 and not _is_four(self.kappa):
            raise UnsupportedRegimeError(
                f"P_l is only known in closed form for kappa >= 4 (got {self.kappa}); use loewner ensembles instead"
            )
        if _is_four(self.kappa):
            # tanh(z/4) stays in the closed upper half-plane
            w = cmath.tanh(z / 4.0)
            return _clip01(math.atan2(abs(w.imag), w.real) / PI)
        im_inf = -math.sin(2 * PI / self.kappa) * self.I
        return _clip01(1.0 - self.F(z).imag / im_inf)

    def p_right(self, z: complex) -> float:
        z = complex(z)
        return self.p_left(complex(-z.real, z.imag))

    def p_in(self, z: complex) -> float:
        z = _in_domain(z)
        if _is_four(self.kappa):
            return 0.0
        if self.kappa < 4:
            raise UnsupportedRegimeError(f"P_in is only defined here for kappa >= 4 (got {self.kappa})")
        num = (cmath.exp(2j * PI / self.kappa) * self.F(z)).imag
        return _clip01(num / (-math.sin(2 * PI / self.kappa) * self.J))

    def p_up(self, x: float) -> float:
        return p_up(x, self.kappa)

    def endpoint_density(self, x: float) -> float:
        return math.cosh(0.5 * x) ** (-4.0 / self.kappa) / self.I


def _in_domain(z: complex) -> complex:
    z = complex(z)
    if z == 0:
        raise DomainError("the origin is excluded from the probability fields")
    if z.imag < -1e-12 or z.imag > PI * (1 + 1e-12):
        raise DomainError(f"z = {z} lies outside the closed strip")
    return complex(z.real, min(max(z.imag, 0.0), PI))


@lru_cache(maxsize=32)
def prob_field(kappa: float) -> ProbField:
    return ProbField(float(kappa))


def p_left(z: complex, kappa: float) -> float:
    return prob_field(kappa).p_left(z)


def p_right(z: complex, kappa: float) -> float:
    return prob_field(kappa).p_right(z)


def p_in(z: complex, kappa: float) -> float:
    if _is_four(kappa):
        _in_domain(z)
        return 0.0
    if kappa < 4:
        raise UnsupportedRegimeError(f"P_in is only defined here for kappa >= 4 (got {kappa})")
    return prob_field(kappa).p_in(z)


def p_up(x: float | np.ndarray, kappa: float) -> float | np.ndarray:
    """
    P_up(i*pi + x) = 1 - (1/I) * integral_{-inf}^x (cosh y/2)^{-4/kappa} dy.

    With t = 1/(1 + e^{-y}) the integral is a regularized incomplete beta
    function, I_{expit(-x)}(2/kappa, 2/kappa); evaluating at expit(-x) keeps
    both tails accurate.
    """
    a = 2.0 / kappa
    out = special.betainc(a, a, special.expit(-np.asarray(x, dtype=float)))
    return float(out) if np.ndim(out) == 0 else out


def endpoint_density(x: float | np.ndarray, kappa: float) -> float | np.ndarray:
    """(1/I)(cosh x/2)^{-4/kappa}, the density of the upper-boundary hitting point."""
    out = np.cosh(0.5 * np.asarray(x, dtype=float)) ** (-4.0 / kappa) / const_I(kappa)
    return float(out) if np.ndim(out) == 0 else out


def p_in_real(x: float, kappa: float) -> float:
    """Boundary restriction P_in(x) = (1/J) integral_{|x|}^inf (sinh y/2)^{-4/kappa} dy."""
    if kappa <= 4:
        raise UnsupportedRegimeError(f"real points are never swallowed for kappa <= 4 (got {kappa})")
    if x == 0:
        return 1.0
    return sinh_tail(abs(x), kappa) / const_J(kappa)


def p_left_negative_axis(x: float, kappa: float) -> float:
    if x >= 0:
        raise DomainError(f"expected x < 0 (got {x})")
    return 1.0 - p_in_real(x, kappa)


def kappa4_upper(x: float | np.ndarray) -> float | np.ndarray:
    """P_l(i*pi + x) at kappa = 4: 1 - (2/pi) arctan(e^{x/2})."""
    return 1.0 - (2.0 / PI) * np.arctan(np.exp(0.5 * np.asarray(x, dtype=float)))


def cardy_crossing(eta: float | np.ndarray) -> float | np.ndarray:
    """Cardy's percolation crossing probability in terms of the cross-ratio eta in [0, 1]."""
    eta = np.asarray(eta, dtype=float)
    pref = 3.0 * special.gamma(2.0 / 3.0) / special.gamma(1.0 / 3.0) ** 2
    return pref * np.cbrt(eta) * special.hyp2f1(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, eta)


def cross_ratio(x: float | np.ndarray) -> float | np.ndarray:
    return special.expit(np.asarray(x, dtype=float))
