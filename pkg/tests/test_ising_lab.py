import math

import numpy as np
import pandas as pd
import pytest

from ising_lab import (
    BETA_C,
    RunConfig,
    SpinLattice,
    binning_error,
    build_lattice,
    cluster_sweep,
    metropolis_sweep,
    run_experiment,
    trace_interface,
)
from ising_lab.lattice import frozen_pattern
from lab_common.errors import GeometryError, InvalidParameterError
from lab_common.rng import stream


def _lattice_from_columns(L: int, boundary: int) -> SpinLattice:
    """Columns left of `boundary` are -, the rest +; the frozen row is the usual half split."""
    width = 3 * L
    spins = np.where(np.arange(width)[:, None] < boundary, -1, 1) * np.ones((1, L), dtype=int)
    return SpinLattice(height=L, spins=spins, frozen_row=frozen_pattern(width))


def test_frozen_row_is_split_in_halves():
    lattice = build_lattice(2, stream(0))
    np.testing.assert_array_equal(lattice.frozen_row, [-1, -1, -1, 1, 1, 1])
    assert lattice.spins.shape == (6, 2)
    assert BETA_C == pytest.approx(0.4406867935, rel=1e-9)


def test_geometry_errors():
    with pytest.raises(GeometryError):
        build_lattice(3, stream(0))
    with pytest.raises(GeometryError):
        build_lattice(1, stream(0))


def test_bond_count_and_all_plus_energy():
    lattice = build_lattice(2, stream(0))
    lattice.spins[...] = 1
    assert lattice.n_bonds == 24
    # 12 horizontal bonds (two of them on the antiperiodic seam), 6 vertical, frozen row sums to 0
    assert lattice.energy() == -14.0


def test_cluster_sweep_keeps_a_ground_state_at_zero_temperature():
    lattice = _lattice_from_columns(4, boundary=6)
    lattice.beta = math.inf
    before = lattice.spins.copy()
    for seed in range(5):
        cluster_sweep(lattice, stream(seed))
    np.testing.assert_array_equal(lattice.spins, before)


def test_sweeps_never_touch_the_frozen_row():
    lattice = build_lattice(4, stream(1))
    frozen = lattice.frozen_row.copy()
    rng = stream(1, 1)
    for _ in range(20):
        cluster_sweep(lattice, rng)
        metropolis_sweep(lattice, rng)
    np.testing.assert_array_equal(lattice.frozen_row, frozen)
    assert set(np.unique(lattice.spins)) <= {-1, 1}


def test_binning_on_independent_data():
    series = stream(3).normal(size=2**14)
    naive, binned, tau = binning_error(series)
    assert naive == pytest.approx(1.0 / math.sqrt(2**14), rel=0.05)
    assert 0.0 <= tau < 0.5


def test_binning_detects_correlation():
    rng = stream(4)
    phi, x = 0.9, np.empty(2**16)
    x[0] = 0.0
    noise = rng.normal(size=x.size)
    for k in range(1, x.size):
        x[k] = phi * x[k - 1] + noise[k]
    # phi / (1 - phi) = 9 for an AR(1) series
    assert binning_error(x)[2] > 4.0


def test_straight_wall_has_zero_displacement():
    L = 4
    sample = trace_interface(_lattice_from_columns(L, boundary=3 * L // 2), stream(0))
    assert sample.displacement == 0
    assert not sample.wrapped
    assert sample.branchings == 0


@pytest.mark.parametrize("shift", [-3, 2, 5])
def test_shifted_wall_is_followed(shift):
    L = 4
    sample = trace_interface(_lattice_from_columns(L, boundary=3 * L // 2 + shift), stream(0))
    assert sample.displacement == shift
    assert not sample.wrapped


def _lattice_from_rows(L: int, row: np.ndarray) -> SpinLattice:
    """Every row of the strip equal to `row`."""
    spins = np.repeat(np.asarray(row, dtype=int)[:, None], L, axis=1)
    return SpinLattice(height=L, spins=spins, frozen_row=frozen_pattern(row.size))


@pytest.mark.parametrize("sign", [1, -1])
def test_wall_crossing_the_seam_keeps_unwrapped_displacement(sign):
    # one flipped column next to the seam pulls the wall one site into the next sheet
    L = 4
    width = 3 * L
    row = np.full(width, sign)
    row[width - 1 if sign > 0 else 0] = -sign
    sample = trace_interface(_lattice_from_rows(L, row), stream(0))
    assert sample.displacement == -sign * (width // 2 + 1)
    assert not sample.wrapped


def test_wall_returning_to_a_shifted_start_is_wrapped():
    L = 4
    row = -frozen_pattern(3 * L)
    rng = stream(5)
    samples = [trace_interface(_lattice_from_rows(L, row), rng) for _ in range(20)]
    assert all(s.wrapped and s.displacement == 0 and s.branchings == 1 for s in samples)


def test_branching_plaquette_is_a_fair_coin():
    L = 4
    lattice = _lattice_from_columns(L, boundary=6)
    lattice.spins[5, 3] = 1
    lattice.spins[6, 3] = -1
    rng = stream(8)
    outcomes = [trace_interface(lattice, rng) for _ in range(2000)]
    moves = np.array([s.displacement for s in outcomes])
    assert set(moves) == {-1, 1}
    assert all(s.branchings == 1 for s in outcomes)
    # 4 sigma of Binomial(2000, 1/2)
    assert abs((moves == 1).sum() - 1000) < 4 * math.sqrt(500)


def test_run_config_validation():
    cfg = RunConfig(L=8, n_samples=10)
    assert cfg.n_equilibration_sweeps == 400
    assert cfg.n_decorrelation_sweeps == 16
    with pytest.raises(InvalidParameterError):
        RunConfig(L=0, n_samples=10)
    with pytest.raises(InvalidParameterError):
        RunConfig(L=4, n_samples=0)
    with pytest.raises(InvalidParameterError):
        RunConfig(L=4, n_samples=10, seed=-1)


def test_experiment_is_reproducible_and_thread_invariant():
    cfg = RunConfig(L=4, n_samples=50, seed=6, n_replicas=2)
    one = run_experiment(cfg, threads=1)
    again = run_experiment(cfg, threads=1)
    many = run_experiment(cfg, threads=2)
    pd.testing.assert_frame_equal(one.records, again.records)
    pd.testing.assert_frame_equal(one.records, many.records)
    np.testing.assert_array_equal(one.energies, many.energies)
    assert len(one.displacements) == 50
    assert set(one.records["replica"]) == {0, 1}


@pytest.mark.slow
def test_cluster_and_metropolis_agree_on_energy():
    def mean_energy(sweep, seed: int) -> tuple[float, float]:
        rng = stream(seed)
        lattice = build_lattice(4, rng)
        for _ in range(500):
            sweep(lattice, rng)
        series = []
        for _ in range(20_000):
            sweep(lattice, rng)
            series.append(lattice.energy_per_bond())
        return float(np.mean(series)), binning_error(np.array(series))[1]

    cluster, cluster_err = mean_energy(cluster_sweep, 1)
    local, local_err = mean_energy(metropolis_sweep, 2)
    assert abs(cluster - local) < 4.0 * math.hypot(cluster_err, local_err)
