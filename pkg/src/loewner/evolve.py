from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from lab_common.errors import DomainError, HorizonTooShortError, InvalidParameterError

from .maps import PI, flow, flow_upper, on_slit
from .params import SleParams


class Fate(enum.IntEnum):
    UNDECIDED = 0
    SWALLOWED = 1
    LEFT = 2
    RIGHT = 3


@dataclass(frozen=True)
class PointFate:
    fate: Fate
    tau: Optional[float] = None
    final_image: Optional[complex] = None


@dataclass(frozen=True, eq=False)
class DrivingPath:
    step: float
    values: np.ndarray  # xi_0 .. xi_n, xi_k held on [kh, (k+1)h)


@dataclass(frozen=True, eq=False)
class MapChain:
    """
    Ordered elementary slit maps (h_k, xi_k).

    `xi` may carry leading batch axes, one chain per row; `xi_end` is the
    driving value at the horizon, used to recenter f_T = g_T - xi_T.
    """

    h: np.ndarray
    xi: np.ndarray
    xi_end: np.ndarray
    delta: float = 1.0

    @classmethod
    def from_driving(cls, values: np.ndarray, step: float, delta: float = 1.0) -> "MapChain":
        values = np.asarray(values, dtype=float)
        n = values.shape[-1] - 1
        if n < 1:
            raise InvalidParameterError("a driving path needs at least one step")
        return cls(h=np.full(n, float(step)), xi=values[..., :-1], xi_end=values[..., -1], delta=delta)

    @classmethod
    def constant(cls, xi: float, step: float, n_steps: int, delta: float = 1.0) -> "MapChain":
        return cls.from_driving(np.full(n_steps + 1, float(xi)), step, delta)

    @property
    def n_steps(self) -> int:
        return int(self.h.shape[0])

    @property
    def total_time(self) -> float:
        return float(self.h.sum())

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return self.xi.shape[:-1]

    def driving_at(self, k: int) -> np.ndarray:
        """Driving value at the end of the first k steps."""
        return self.xi[..., k] if k < self.n_steps else self.xi_end

    def mirrored(self) -> "MapChain":
        return MapChain(h=self.h, xi=-self.xi, xi_end=-self.xi_end, delta=self.delta)

    def row(self, i: int) -> "MapChain":
        return MapChain(h=self.h, xi=self.xi[i], xi_end=self.xi_end[i], delta=self.delta)


@dataclass(frozen=True, eq=False)
class Trace:
    times: np.ndarray
    points: np.ndarray


@dataclass(eq=False)
class FateArrays:
    kind: np.ndarray
    tau: np.ndarray
    image: np.ndarray
    snapshots: dict[int, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)


def sample_driving(params: SleParams, n_steps: int, rng: np.random.Generator) -> DrivingPath:
    if n_steps < 1:
        raise InvalidParameterError(f"n_steps must be >= 1 (got {n_steps})")
    increments = rng.normal(0.0, math.sqrt(params.kappa * params.step), size=n_steps)
    values = np.concatenate(([0.0], np.cumsum(increments)))
    return DrivingPath(step=params.step, values=values)


def evolve_points(
    z: np.ndarray | complex,
    chain: MapChain,
    params: SleParams,
    snapshots: Iterable[int] = (),
) -> FateArrays:
    """
    Push points through the chain, recentering on the driving at every step.

    A lower point is swallowed when it sits on the slit of the current step.
    For kappa > 4 it is also swallowed when the driving jumps from xi_{k-1} to
    xi_k and its image lies in the closed half-disk over [xi_{k-1}, xi_k]; on
    the real line that is exactly a crossing. For kappa <= 4 the hull is the
    trace and no crossing swallows. Points escape once |Re f| exceeds the
    threshold. `snapshots` lists step counts k at which (fate, f_{t_k}) is
    recorded.
    """
    dl = chain.delta
    z = np.asarray(z, dtype=complex) / dl
    xi = chain.xi / dl
    h = chain.h / dl**2
    shape = np.broadcast_shapes(z.shape, chain.batch_shape)
    g = np.array(np.broadcast_to(z, shape), dtype=complex).ravel()
    if np.any(np.abs(g) == 0.0):
        raise DomainError("the origin is the starting point of the trace and has no fate")

    n = chain.n_steps
    thr = params.escape_threshold
    eps = params.eps_swallow
    enclosing = params.kappa > 4
    upper = np.abs(g.imag - PI) <= 1e-12
    g[upper] = g[upper].real + 1j * PI

    def xi_at(k: int) -> np.ndarray:
        return np.broadcast_to(chain.driving_at(k) / dl, shape).ravel()

    kind = np.zeros(g.shape, dtype=np.int8)
    tau = np.full(g.shape, np.nan)
    wanted = sorted(set(int(k) for k in snapshots))
    snaps: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    if 0 in wanted:
        snaps[0] = (kind.copy(), g - xi_at(0))

    prev = xi_at(0)
    t = 0.0
    for k in range(n):
        active = kind == Fate.UNDECIDED
        if not active.any():
            break
        hk = float(h[k])
        xk = xi_at(k)
        d = g - xk
        lower = active & ~upper
        # on R only the base point xi_k itself lies on the slit
        hit = lower & on_slit(d, hk, eps) & ((g.imag > 0) | (d.real == 0))
        if enclosing:
            # (x - a)(b - x) >= y^2  <=>  x + iy inside the half-disk on [a, b]
            hit |= lower & ((g.real - prev) * (xk - g.real) >= g.imag**2) & (prev != xk)
        kind[hit] = Fate.SWALLOWED
        tau[hit] = (t + 0.5 * hk) * dl**2

        moving = active & ~hit
        m_low = moving & ~upper
        m_up = moving & upper
        g[m_low] = flow(g[m_low], xk[m_low], hk)
        g[m_up] = flow_upper(g[m_up].real, xk[m_up], hk) + 1j * PI
        t += hk

        dn = g.real - xk
        escaped = moving & (np.abs(dn) > thr)
        kind[escaped & (dn > 0)] = Fate.RIGHT
        kind[escaped & (dn < 0)] = Fate.LEFT
        prev = xk
        if k + 1 in wanted:
            snaps[k + 1] = (kind.copy(), g - xi_at(k + 1))

    for k in wanted:
        if k not in snaps:
            snaps[k] = (kind.copy(), g - xi_at(min(k, n)))

    image = (g - xi_at(n)) * dl
    snaps = {k: (kd.reshape(shape), f.reshape(shape) * dl) for k, (kd, f) in snaps.items()}
    return FateArrays(kind=kind.reshape(shape), tau=tau.reshape(shape), image=image.reshape(shape), snapshots=snaps)


def evolve_point(z: complex, chain: MapChain, params: SleParams) -> PointFate:
    if chain.batch_shape:
        raise InvalidParameterError("evolve_point takes a single chain; use evolve_points for batches")
    out = evolve_points(complex(z), chain, params)
    fate = Fate(int(out.kind))
    if fate is Fate.SWALLOWED:
        return PointFate(fate, tau=float(out.tau))
    if fate is Fate.UNDECIDED:
        return PointFate(fate, final_image=complex(out.image))
    return PointFate(fate)


def recentered(z: complex, chain: MapChain) -> complex:
    """f_T(z) = g_T(z) - xi_T with no swallowing or escape bookkeeping."""
    dl = chain.delta
    g = np.asarray(complex(z) / dl)
    for k in range(chain.n_steps):
        g = flow(g, chain.xi[k] / dl, chain.h[k] / dl**2)
    return complex(g - chain.xi_end / dl) * dl


def trace(chain: MapChain, params: SleParams) -> Trace:
    """
    gamma(t_k) = g_{t_k}^{-1}(xi_{k-1} + i eps_tip), the preimage of the tip of the
    slit grown in step k - 1; all prefixes are pulled back together.
    """
    if chain.batch_shape:
        raise InvalidParameterError("trace takes a single chain")
    dl = chain.delta
    n = chain.n_steps
    xi = chain.xi / dl
    h = chain.h / dl**2
    eps = params.eps_tip / dl

    tips = xi + 1j * eps
    for j in range(n - 1, -1, -1):
        tips[j:] = flow(tips[j:], xi[j], -h[j])

    points = np.concatenate(([1j * eps], tips)) * dl
    times = np.concatenate(([0.0], np.cumsum(chain.h)))
    return Trace(times=times, points=points)


def _upper_sides(
    x: np.ndarray, xi: np.ndarray, xi_end: np.ndarray, h: np.ndarray, thr: float, by_sign: bool
) -> np.ndarray:
    """-1 / +1 for upper-boundary points that end left / right, 0 if still undecided at the horizon."""
    x = np.array(x, dtype=float)
    side = np.zeros(x.shape, dtype=np.int8)
    for k in range(h.shape[0]):
        xk = xi[..., k]
        x = flow_upper(x, xk, h[k])
        d = x - xk
        side[(side == 0) & (d > thr)] = 1
        side[(side == 0) & (d < -thr)] = -1
        if np.all(side != 0):
            return side
    if by_sign:
        rest = side == 0
        side[rest] = np.where(x[rest] - np.broadcast_to(xi_end, x.shape)[rest] < 0, -1, 1)
    return side


def endpoint_on_upper_boundary(
    chain: MapChain, params: SleParams, tol: float = 1e-3, undecided: str = "raise"
) -> float | np.ndarray:
    """
    Bisect for x* such that i*pi + x ends Left for x < x* and Right for x > x*.

    The bracket starts one unit outside the range of the driving, where the side
    is known; if the horizon is too short to escape from there,
    HorizonTooShortError is raised. Bisection midpoints close to x* may still be
    undecided at the horizon: undecided="raise" treats that as an error too,
    undecided="sign" assigns them the side of Re f_T.

    Works on every chain of a batch at once; returns a float for a single chain.
    """
    if undecided not in ("raise", "sign"):
        raise InvalidParameterError(f"undecided must be 'raise' or 'sign' (got {undecided!r})")
    dl = chain.delta
    xi = chain.xi / dl
    xi_end = np.asarray(chain.xi_end / dl)
    h = chain.h / dl**2
    thr = params.escape_threshold

    lo = np.minimum(xi.min(axis=-1), xi_end) - 1.0
    hi = np.maximum(xi.max(axis=-1), xi_end) + 1.0
    if np.any(_upper_sides(lo, xi, xi_end, h, thr, False) != -1) or np.any(
        _upper_sides(hi, xi, xi_end, h, thr, False) != 1
    ):
        raise HorizonTooShortError(
            f"upper-boundary bracket ends stay undecided after t = {chain.total_time:g}; increase t_max"
        )

    by_sign = undecided == "sign"
    while np.max(hi - lo) > tol / dl:
        mid = 0.5 * (lo + hi)
        side = _upper_sides(mid, xi, xi_end, h, thr, by_sign)
        if np.any(side == 0):
            raise HorizonTooShortError(
                f"upper-boundary points within {np.max(hi - lo) * dl:.3g} of x* stay undecided; "
                "increase t_max or pass undecided='sign'"
            )
        lo = np.where(side < 0, mid, lo)
        hi = np.where(side < 0, hi, mid)

    x_star = 0.5 * (lo + hi) * dl
    return float(x_star) if x_star.ndim == 0 else x_star
