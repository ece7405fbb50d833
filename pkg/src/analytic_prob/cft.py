from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from lab_common.errors import InvalidParameterError

Number = Union[int, float, str, Fraction]


def _rational(v: Number) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    # 10/3 arrives as 3.3333333333333335; recover the intended ratio
    return Fraction(v).limit_denominator(1_000_000)


@dataclass(frozen=True)
class CftConstants:
    kappa: float
    c: float
    h12: float
    h0half: float


def h_rs(r: Number, s: Number, kappa: Number) -> float:
    """h_{r;s} = [(r kappa - 4s)^2 - (kappa - 4)^2] / (16 kappa)."""
    k = _rational(kappa)
    if k <= 0:
        raise InvalidParameterError(f"kappa must be > 0 (got {kappa})")
    r, s = _rational(r), _rational(s)
    return float(((r * k - 4 * s) ** 2 - (k - 4) ** 2) / (16 * k))


def cft_constants(kappa: Number) -> CftConstants:
    k = _rational(kappa)
    if k <= 0:
        raise InvalidParameterError(f"kappa must be > 0 (got {kappa})")
    c = (k - 6) * (8 - 3 * k) / (2 * k)
    h12 = (6 - k) / (2 * k)
    h0half = (6 - k) * (k - 2) / (16 * k)
    return CftConstants(kappa=float(k), c=float(c), h12=float(h12), h0half=float(h0half))
