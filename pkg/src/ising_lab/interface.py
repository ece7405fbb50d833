from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lab_common.errors import MalformedConfigurationError

from .lattice import SpinLattice


@dataclass(frozen=True)
class InterfaceSample:
    displacement: int
    wrapped: bool
    steps: int = 0
    branchings: int = 0


def trace_interface(lattice: SpinLattice, rng: np.random.Generator) -> InterfaceSample:
    """
    Follow the domain wall from the middle of the frozen row to the free top edge.

    The walk moves on dual vertices (X, Y), X unwrapped across the seam, Y in
    [0, L]; it keeps - spins on its left and + spins on its right. Across the
    antiperiodic seam the spins seen in sheet k carry the sign seam_sign**k.
    A plaquette with alternating spins is a branching point and the turn is
    a fair coin flip.
    """
    w, l = lattice.spins.shape
    spins, frozen, seam = lattice.spins, lattice.frozen_row, lattice.seam_sign
    x0 = w // 2
    budget = 100 * w * l

    def spin(x: int, y: int) -> int:
        sheet, col = divmod(x, w)
        v = int(frozen[col]) if y < 0 else int(spins[col, y])
        return v if sheet % 2 == 0 else seam * v

    X, Y, dx, dy = x0, 0, 0, 1
    steps = branchings = 0
    while True:
        if Y == l:
            return InterfaceSample(displacement=X - x0, wrapped=False, steps=steps, branchings=branchings)
        if Y < 0 or (Y == 0 and X != x0 and (X - x0) % w == 0):
            return InterfaceSample(displacement=0, wrapped=True, steps=steps, branchings=branchings)
        if steps > budget:
            raise MalformedConfigurationError(f"interface walk exceeded {budget} steps")

        lx, ly = -dy, dx
        front_left = spin(X + (dx + lx - 1) // 2, Y + (dy + ly - 1) // 2)
        front_right = spin(X + (dx - lx - 1) // 2, Y + (dy - ly - 1) // 2)
        if front_left > 0 and front_right > 0:
            dx, dy = lx, ly
        elif front_left < 0 and front_right < 0:
            dx, dy = -lx, -ly
        elif front_left > 0 and front_right < 0:
            branchings += 1
            if rng.random() < 0.5:
                dx, dy = lx, ly
            else:
                dx, dy = -lx, -ly

        if __debug__:
            lx, ly = -dy, dx
            ny = Y + (dy + ly - 1) // 2
            if 0 <= Y + dy <= l and ny < l:
                assert spin(X + (dx + lx - 1) // 2, ny) < 0
                assert spin(X + (dx - lx - 1) // 2, Y + (dy - ly - 1) // 2) > 0

        X, Y = X + dx, Y + dy
        steps += 1
