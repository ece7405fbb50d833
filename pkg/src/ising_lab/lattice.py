from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from lab_common.errors import GeometryError

# beta_c * J with J = 1, i.e. T_c / J = 2 / log(1 + sqrt 2)
BETA_C = math.log(1.0 + math.sqrt(2.0)) / 2.0


def frozen_pattern(width: int) -> np.ndarray:
    row = np.ones(width, dtype=np.int8)
    row[: width // 2] = -1
    return row


@dataclass(eq=False)
class SpinLattice:
    """
    Ising strip of height L and width W = 3L.

    spins[x, y] with column x in [0, W) and row y in [0, L); the frozen row sits
    below row 0, row L-1 has no upward neighbour, and the bond between column
    W-1 and column 0 carries coupling seam_sign.
    """

    height: int
    spins: np.ndarray
    frozen_row: np.ndarray
    beta: float = BETA_C
    seam_sign: int = -1
    _bonds: tuple[np.ndarray, np.ndarray, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.spins = np.asarray(self.spins, dtype=np.int8)
        self.frozen_row = np.asarray(self.frozen_row, dtype=np.int8)
        w, l = self.spins.shape
        if l != self.height or self.frozen_row.shape != (w,):
            raise GeometryError(f"spins {self.spins.shape} do not match height {self.height} / frozen row")
        if w % 2:
            raise GeometryError(f"width must be even (got {w})")
        self._bonds = _bond_table(w, l, self.seam_sign)

    @property
    def width(self) -> int:
        return int(self.spins.shape[0])

    @property
    def bonds(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(i, j, eta) over flattened sites x*L + y, frozen-row bonds excluded."""
        return self._bonds

    @property
    def n_bonds(self) -> int:
        return int(self._bonds[0].size) + self.width

    def energy(self) -> float:
        s = self.spins.ravel().astype(np.int64)
        i, j, eta = self._bonds
        bulk = np.sum(eta * s[i] * s[j])
        edge = np.sum(self.frozen_row.astype(np.int64) * self.spins[:, 0])
        return float(-(bulk + edge))

    def energy_per_bond(self) -> float:
        return self.energy() / self.n_bonds

    def magnetization(self) -> float:
        return float(self.spins.mean())


def _bond_table(w: int, l: int, seam_sign: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    x, y = np.meshgrid(np.arange(w), np.arange(l), indexing="ij")
    idx = x * l + y
    right = (idx, ((x + 1) % w) * l + y, np.where(x == w - 1, seam_sign, 1))
    up = (idx[:, :-1], idx[:, 1:], np.ones((w, l - 1), dtype=int))
    i = np.concatenate([right[0].ravel(), up[0].ravel()])
    j = np.concatenate([right[1].ravel(), up[1].ravel()])
    eta = np.concatenate([right[2].ravel(), up[2].ravel()]).astype(np.int64)
    return i, j, eta


def build_lattice(L: int, rng: np.random.Generator, beta: float = BETA_C) -> SpinLattice:
    if L < 2:
        raise GeometryError(f"L must be >= 2 (got {L})")
    width = 3 * L
    if width % 2:
        raise GeometryError(f"3L must be even so the frozen row splits in halves (got L={L})")
    spins = rng.choice(np.array([-1, 1], dtype=np.int8), size=(width, L))
    return SpinLattice(height=L, spins=spins, frozen_row=frozen_pattern(width), beta=beta)
