from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from lab_common.errors import DomainError, InvalidParameterError

from .fields import p_up, prob_field
from .integrals import PI

FieldSpec = Union[str, Callable[[complex], float]]


@dataclass(frozen=True)
class ResidualCertificate:
    z: complex
    h_fd: float
    martingale: float  # |kappa dd-bar P + 2 Re[(coth(z/2) + kappa/2 d) dP]|
    laplacian: float


def _resolve(field: FieldSpec, kappa: float) -> Callable[[complex], float]:
    if callable(field):
        return field
    pf = prob_field(kappa)
    if field == "p_left":
        return pf.p_left
    if field == "p_in":
        return pf.p_in
    raise InvalidParameterError(f"unknown field {field!r}; expected 'p_left', 'p_in' or a callable")


def pde_residual(field: FieldSpec, z: complex, kappa: float, h_fd: float = 1e-2) -> ResidualCertificate:
    """
    Central-difference residual of the martingale equation

        kappa dd-bar P + (coth(z/2) + (kappa/2) d) dP + conjugate = 0

    together with the plain Laplacian, at an interior point z.
    """
    z = complex(z)
    if z.imag - h_fd < 0 or z.imag + h_fd > PI:
        raise DomainError(f"stencil of width {h_fd} at {z} leaves the strip")
    if abs(z) < 10 * h_fd:
        raise DomainError(f"{z} is closer than 10*h_fd to the branch point")
    P = _resolve(field, kappa)
    h = h_fd

    c = P(z)
    e, w = P(z + h), P(z - h)
    n, s = P(z + 1j * h), P(z - 1j * h)
    ne, nw = P(z + h + 1j * h), P(z - h + 1j * h)
    se, sw = P(z + h - 1j * h), P(z - h - 1j * h)

    px = (e - w) / (2 * h)
    py = (n - s) / (2 * h)
    pxx = (e - 2 * c + w) / h**2
    pyy = (n - 2 * c + s) / h**2
    pxy = (ne - nw - se + sw) / (4 * h**2)

    dz = 0.5 * complex(px, -py)
    dzz = 0.25 * complex(pxx - pyy, -2 * pxy)
    lap = pxx + pyy
    coth = 1.0 / cmath.tanh(0.5 * z)
    mart = 0.25 * kappa * lap + 2.0 * (coth * dz + 0.5 * kappa * dzz).real
    return ResidualCertificate(z=z, h_fd=h, martingale=abs(mart), laplacian=abs(lap))


def hitting_ode_residual(
    kappa: float, x: float, h_fd: float = 1e-3, profile: Optional[Callable[[float], float]] = None
) -> float:
    """(kappa/2) P'' + tanh(x/2) P' by central differences; P defaults to p_up."""
    P = profile if profile is not None else (lambda t: p_up(t, kappa))
    h = h_fd
    d1 = (P(x + h) - P(x - h)) / (2 * h)
    d2 = (P(x + h) - 2 * P(x) + P(x - h)) / h**2
    return 0.5 * kappa * d2 + math.tanh(0.5 * x) * d1
