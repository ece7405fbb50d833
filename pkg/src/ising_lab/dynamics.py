from __future__ import annotations

import math

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .lattice import SpinLattice


def bond_probability(beta: float) -> float:
    return 1.0 if math.isinf(beta) else -math.expm1(-2.0 * beta)


def cluster_sweep(lattice: SpinLattice, rng: np.random.Generator) -> None:
    """
    One Swendsen-Wang update with signed couplings.

    Satisfied bonds (eta * s_i * s_j = +1) open with p = 1 - e^{-2 beta}; every
    cluster flips with probability 1/2 except the one holding the frozen row,
    which is merged into a single anchor node.
    """
    w, l = lattice.spins.shape
    n = w * l
    s = lattice.spins.ravel().astype(np.int64)
    i, j, eta = lattice.bonds
    p = bond_probability(lattice.beta)

    open_bulk = (eta * s[i] * s[j] == 1) & (rng.random(i.size) < p)
    bottom = np.arange(w) * l
    open_edge = (lattice.frozen_row.astype(np.int64) * s[bottom] == 1) & (rng.random(w) < p)

    rows = np.concatenate([i[open_bulk], bottom[open_edge]])
    cols = np.concatenate([j[open_bulk], np.full(int(open_edge.sum()), n)])
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n + 1, n + 1))
    n_comp, labels = connected_components(graph, directed=False)

    flip = rng.random(n_comp) < 0.5
    flip[labels[n]] = False
    s = np.where(flip[labels[:n]], -s, s)
    lattice.spins[...] = s.reshape(w, l)


def local_field(lattice: SpinLattice) -> np.ndarray:
    s = lattice.spins.astype(np.int64)
    left = np.roll(s, 1, axis=0)
    left[0, :] *= lattice.seam_sign
    right = np.roll(s, -1, axis=0)
    right[-1, :] *= lattice.seam_sign
    down = np.empty_like(s)
    down[:, 1:] = s[:, :-1]
    down[:, 0] = lattice.frozen_row
    up = np.zeros_like(s)
    up[:, :-1] = s[:, 1:]
    return left + right + down + up


def metropolis_sweep(lattice: SpinLattice, rng: np.random.Generator) -> None:
    """Single-spin Metropolis on the same Hamiltonian, updated as two checkerboard halves."""
    w, l = lattice.spins.shape
    x, y = np.meshgrid(np.arange(w), np.arange(l), indexing="ij")
    parity = (x + y) % 2
    for colour in (0, 1):
        d_e = 2 * lattice.spins.astype(np.int64) * local_field(lattice)
        accept = rng.random((w, l)) < np.exp(-lattice.beta * np.maximum(d_e, 0))
        move = accept & (parity == colour)
        lattice.spins[move] *= -1


def binning_error(series: np.ndarray, min_bins: int = 32) -> tuple[float, float, float]:
    """
    Naive and binned standard errors of the mean, and the integrated
    autocorrelation time tau = ((err_binned / err_naive)^2 - 1) / 2.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        return float("nan"), float("nan"), float("nan")
    errors = []
    while x.size >= 2 * min_bins or not errors:
        errors.append(np.std(x, ddof=1) / math.sqrt(x.size))
        m = x.size // 2
        if m < 2:
            break
        x = 0.5 * (x[0 : 2 * m : 2] + x[1 : 2 * m : 2])
    naive, binned = float(errors[0]), float(max(errors))
    tau = 0.5 * ((binned / naive) ** 2 - 1.0) if naive > 0 else 0.0
    return naive, binned, tau
