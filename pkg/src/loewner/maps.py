from __future__ import annotations

import enum
import math

import numpy as np

from lab_common.errors import InvalidParameterError, require_finite

PI = math.pi
# beyond this |Re(z - xi)| the flow velocity equals +-1 to double precision
_FAR = 30.0


class SwallowedFlag(enum.Enum):
    SWALLOWED = "swallowed"


SWALLOWED = SwallowedFlag.SWALLOWED


def _strip_branch(u: np.ndarray, side: np.ndarray) -> np.ndarray:
    """Pick +-u so that Im lies in [0, pi] and Re has the sign of `side` on the real line."""
    flip = (u.imag < 0) | ((u.imag == 0) & (side < 0))
    return np.where(flip, -u, u)


def _clip_strip(w: np.ndarray) -> np.ndarray:
    return w.real + 1j * np.clip(w.imag, 0.0, PI)


def flow(g: np.ndarray, xi: np.ndarray | float, s: np.ndarray | float) -> np.ndarray:
    """
    Constant-driving solution at delta = 1 over signed time s.

    cosh((g_s - xi)/2) = e^{s/2} cosh((g - xi)/2); s > 0 is the forward slit map,
    s < 0 its inverse.
    """
    g = np.asarray(g, dtype=complex)
    d = g - xi
    far = np.abs(d.real) > _FAR
    zeta = np.where(far, 0.0, 0.5 * d)
    big_w = np.exp(0.5 * np.asarray(s)) * np.cosh(zeta)
    u = _strip_branch(np.arccosh(big_w), zeta.real)
    out = np.where(far, g + np.sign(d.real) * s, xi + 2.0 * u)
    return _clip_strip(out)


def flow_upper(x: np.ndarray, xi: np.ndarray | float, s: np.ndarray | float) -> np.ndarray:
    """Real coordinate of i*pi + x under the same flow; the upper boundary is invariant."""
    x = np.asarray(x, dtype=float)
    d = x - xi
    far = np.abs(d) > _FAR
    near = np.where(far, 0.0, d)
    out = xi + 2.0 * np.arcsinh(np.exp(0.5 * np.asarray(s)) * np.sinh(0.5 * near))
    return np.where(far, x + np.sign(d) * s, out)


def on_slit(d: np.ndarray, h: float, eps: float) -> np.ndarray:
    """True where d = z - xi lies on the elementary slit {iy : 0 <= y <= 2 arccos(e^{-h/2})}."""
    d = np.asarray(d, dtype=complex)
    inside = np.abs(d.real) <= _FAR
    w = np.cosh(0.5 * np.where(inside, d, 0.0))
    lo = math.exp(-0.5 * h)
    hit = (np.abs(w.imag) <= eps) & (w.real >= lo - eps) & (w.real <= 1.0 + eps)
    return hit & inside


def slit_height(h: float) -> float:
    return 2.0 * math.acos(math.exp(-0.5 * h))


def _check_strip(z: complex, delta: float) -> None:
    if z.imag < -1e-12 * delta or z.imag > PI * delta * (1 + 1e-12):
        raise InvalidParameterError(f"point {z} lies outside the closed strip of width pi*{delta}")


def elementary_map(
    z: complex, xi: float, h: float, delta: float = 1.0, eps_swallow: float = 1e-9
) -> complex | SwallowedFlag:
    require_finite("elementary_map input", z, xi, h, delta)
    z = complex(z)
    _check_strip(z, delta)
    zs, xs, hs = z / delta, xi / delta, h / delta**2
    if bool(on_slit(zs - xs, hs, eps_swallow)):
        return SWALLOWED
    return complex(flow(zs, xs, hs)) * delta


def elementary_inverse(w: complex, xi: float, h: float, delta: float = 1.0) -> complex:
    require_finite("elementary_inverse input", w, xi, h, delta)
    w = complex(w)
    _check_strip(w, delta)
    return complex(flow(w / delta, xi / delta, -h / delta**2)) * delta


def constant_driving_trace(t: np.ndarray | float, xi: float = 0.0, delta: float = 1.0) -> np.ndarray:
    """gamma(t) = xi + 2i*delta*arccos(e^{-t/(2 delta^2)}) for driving frozen at xi."""
    t = np.asarray(t, dtype=float)
    return xi + 2j * delta * np.arccos(np.exp(-0.5 * t / delta**2))


def to_half_plane(z: np.ndarray | complex, delta: float = 1.0) -> np.ndarray:
    """Strip to upper half-plane, w = tanh(z / 2 delta): x0 = 0 -> 0, x_pm = pm infinity -> pm 1."""
    return np.tanh(np.asarray(z, dtype=complex) / (2.0 * delta))


def from_half_plane(w: np.ndarray | complex, delta: float = 1.0) -> np.ndarray:
    z = 2.0 * delta * np.arctanh(np.asarray(w, dtype=complex))
    return z.real + 1j * np.abs(z.imag)
