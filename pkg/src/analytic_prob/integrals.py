from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy import integrate

from lab_common.errors import DivergentIntegralError, DomainError, InvalidParameterError, SingularInputError

PI = math.pi


@dataclass(frozen=True)
class QuadConfig:
    epsabs: float = 1e-12
    epsrel: float = 1e-12
    cutoff: float = 50.0  # A: analytic exponential tails beyond |Re u| = A
    limit: int = 200
    series_radius: float = 1e-3  # local expansion around the branch point (kappa > 4)
    singular_radius: float = 1e-8  # refuse F inside this radius for kappa <= 4
    split: float = 1.0  # [0, split] handled with the algebraic weight y^{-4/kappa}


DEFAULT_QUAD = QuadConfig()


def _check_kappa(kappa: float) -> float:
    if not (math.isfinite(kappa) and kappa > 0):
        raise InvalidParameterError(f"kappa must be > 0 (got {kappa})")
    return 4.0 / kappa


def _theta(a: float, b: float) -> float:
    return math.atan2(math.cosh(0.5 * a) * math.sin(0.5 * b), math.sinh(0.5 * a) * math.cos(0.5 * b))


def _modulus(a: float, b: float) -> float:
    # |sinh((a+ib)/2)|^2 = sinh^2(a/2) + sin^2(b/2)
    return math.hypot(math.sinh(0.5 * a), math.sin(0.5 * b))


def integrand(z: complex, kappa: float) -> complex:
    """(sinh z/2)^{-4/kappa} with arg(sinh z/2) in [0, pi]."""
    p = _check_kappa(kappa)
    z = complex(z)
    if z == 0:
        raise SingularInputError("the integrand has a branch point at z = 0")
    if z.imag < 0 or z.imag > PI * (1 + 1e-12):
        raise DomainError(f"z = {z} lies outside the closed strip")
    r = _modulus(z.real, z.imag)
    th = _theta(z.real, z.imag)
    return r ** (-p) * cmath.exp(-1j * p * th)


def _quad(fn, lo: float, hi: float, quad: QuadConfig, **kw) -> float:
    val, _ = integrate.quad(fn, lo, hi, epsabs=quad.epsabs, epsrel=quad.epsrel, limit=quad.limit, **kw)
    return val


def _sinh_head(s: float, p: float, quad: QuadConfig) -> float:
    """Integral of (sinh y/2)^{-p} over [0, s] for p < 1, with the y^{-p} singularity as weight."""

    def smooth(y: float) -> float:
        return 2.0**p if y == 0.0 else (y / math.sinh(0.5 * y)) ** p

    return _quad(smooth, 0.0, s, quad, weight="alg", wvar=(-p, 0.0))


def _sinh_tail_beyond(a: float, p: float) -> float:
    # (sinh y/2)^{-p} = 2^p e^{-py/2}(1 + O(e^{-y})) for y >= a
    return 2.0**p * (2.0 / p) * math.exp(-0.5 * p * a)


def sinh_tail(s: float, kappa: float, quad: QuadConfig = DEFAULT_QUAD) -> float:
    """Integral of (sinh y/2)^{-4/kappa} over [s, infinity), s > 0."""
    p = _check_kappa(kappa)
    if s <= 0:
        raise DomainError(f"sinh_tail needs s > 0 (got {s})")
    if s < quad.split and p < 1:
        return const_J(kappa, quad) - _sinh_head(s, p, quad)
    top = max(s, quad.cutoff)
    body = _quad(lambda y: math.sinh(0.5 * y) ** (-p), s, top, quad) if top > s else 0.0
    return body + _sinh_tail_beyond(top, p)


def const_I(kappa: float, quad: QuadConfig = DEFAULT_QUAD) -> float:
    return _const_I(kappa, quad)


@lru_cache(maxsize=64)
def _const_I(kappa: float, quad: QuadConfig) -> float:
    p = _check_kappa(kappa)
    a = quad.cutoff
    body = _quad(lambda y: math.cosh(0.5 * y) ** (-p), 0.0, a, quad)
    # (cosh y/2)^{-p} = 2^p e^{-py/2}(1 + O(e^{-y}))
    tail = 2.0**p * (2.0 / p) * math.exp(-0.5 * p * a)
    return 2.0 * (body + tail)


def const_J(kappa: float, quad: QuadConfig = DEFAULT_QUAD) -> float:
    return _const_J(kappa, quad)


@lru_cache(maxsize=64)
def _const_J(kappa: float, quad: QuadConfig) -> float:
    p = _check_kappa(kappa)
    if kappa <= 4:
        raise DivergentIntegralError(f"J diverges at the origin for kappa <= 4 (got {kappa})")
    c, a = quad.split, quad.cutoff
    head = _sinh_head(c, p, quad)
    body = _quad(lambda y: math.sinh(0.5 * y) ** (-p), c, a, quad)
    return head + body + _sinh_tail_beyond(a, p)


def _series_near_origin(z: complex, kappa: float, quad: QuadConfig) -> complex:
    """F(z) - F(0) from (sinh u/2)^{-p} = (u/2)^{-p}(1 - p u^2/24 + ...), principal arg in [0, pi]."""
    p = 4.0 / kappa
    r = abs(z)
    th = math.atan2(max(z.imag, 0.0), z.real)

    def power(s: float) -> complex:
        return r**s * cmath.exp(1j * s * th)

    jump = 2.0**p * (power(1 - p) / (1 - p) - (p / 24.0) * power(3 - p) / (3 - p))
    return cmath.exp(-4j * PI / kappa) * const_J(kappa, quad) + jump


def _line_integral(x: float, b: float, kappa: float, quad: QuadConfig) -> complex:
    """Integral of the integrand along Im u = b from -infinity to x (x may be +inf)."""
    p = 4.0 / kappa
    a = quad.cutoff
    scale = 2.0**p * (kappa / 2.0)

    def left_asym(u: complex) -> complex:
        return scale * cmath.exp((2.0 * u - 4j * PI) / kappa)

    if x <= -a:
        return left_asym(complex(x, b))
    upper = min(x, a)
    pts = [0.0] if -a < 0.0 < upper else None

    def re(t: float) -> float:
        return (_modulus(t, b) ** (-p)) * math.cos(p * _theta(t, b))

    def im(t: float) -> float:
        return -(_modulus(t, b) ** (-p)) * math.sin(p * _theta(t, b))

    total = left_asym(complex(-a, b))
    total += complex(_quad(re, -a, upper, quad, points=pts), _quad(im, -a, upper, quad, points=pts))
    if x > a:
        # (sinh u/2)^{-p} = 2^p e^{-pu/2} far right
        far = scale * cmath.exp(-2.0 * complex(a, b) / kappa)
        if math.isfinite(x):
            far -= scale * cmath.exp(-2.0 * complex(x, b) / kappa)
        total += far
    return total


def F(z: complex, kappa: float, quad: QuadConfig = DEFAULT_QUAD) -> complex:
    """
    F(z) = integral from -infinity to z of (sinh u/2)^{-4/kappa} du.

    The contour runs along Im u = Im z. On the real axis F is assembled from
    the real tails, passing through the origin for kappa > 4 and along the
    upper boundary (F(+inf) = e^{-2 i pi/kappa} I) otherwise. Re z = +inf is
    accepted and returns F(+inf) on the given height.
    """
    _check_kappa(kappa)
    z = complex(z)
    x, b = z.real, z.imag
    if b < -1e-12 or b > PI * (1 + 1e-12):
        raise DomainError(f"z = {z} lies outside the closed strip")
    b = min(max(b, 0.0), PI)
    r = abs(complex(x if math.isfinite(x) else 1.0, b))

    if kappa <= 4 and r < quad.singular_radius:
        raise DivergentIntegralError(f"F is unbounded near the origin for kappa <= 4 (|z| = {r:.3g})")
    if kappa > 4 and r < quad.series_radius:
        return _series_near_origin(complex(x, b), kappa, quad)

    if b == 0.0:
        phase_left = cmath.exp(-4j * PI / kappa)
        if x < 0:
            return phase_left * sinh_tail(-x, kappa, quad)
        rest = 0.0 if not math.isfinite(x) else sinh_tail(x, kappa, quad)
        if kappa > 4:
            j = const_J(kappa, quad)
            return phase_left * j + (j - rest)
        return cmath.exp(-2j * PI / kappa) * const_I(kappa, quad) - rest
    return _line_integral(x, b, kappa, quad)


def im_F_theta(z: complex, kappa: float, quad: QuadConfig = DEFAULT_QUAD) -> float:
    """Im F(x+ib) = -integral over a < x of R^{-4/kappa} sin(4 theta/kappa), the real representation."""
    z = complex(z)
    p = _check_kappa(kappa)
    a = quad.cutoff
    b = z.imag
    # asymptotic left tail: Im of scale*exp((2u - 4i pi)/kappa) at u = -a + ib
    tail = (2.0**p * kappa / 2.0) * math.exp(-2.0 * a / kappa) * math.sin((2.0 * b - 4.0 * PI) / kappa)
    upper = min(z.real, a)
    pts = [0.0] if -a < 0.0 < upper else None
    body = _quad(lambda t: _modulus(t, b) ** (-p) * math.sin(p * _theta(t, b)), -a, upper, quad, points=pts)
    return tail - body
