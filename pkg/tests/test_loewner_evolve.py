import math

import numpy as np
import pandas as pd
import pytest

from analytic_prob.fields import p_in_real
from lab_common.errors import DomainError, HorizonTooShortError, InvalidParameterError
from lab_common.rng import stream
from loewner import Fate, MapChain, SleParams, endpoint_on_upper_boundary, evolve_point, sample_driving, trace
from loewner.ensemble import driving_batch, ensemble_endpoints, ensemble_fates, lower_boundary_swallow_frequency
from loewner.evolve import evolve_points
from loewner.maps import constant_driving_trace


def _constant_chain(params: SleParams) -> MapChain:
    return MapChain.constant(0.0, params.step, params.n_steps)


def test_point_on_vertical_slit_is_swallowed_when_tip_passes():
    params = SleParams(kappa=2.0, step=1e-3, t_max=1.0)
    out = evolve_point(0.5j, _constant_chain(params), params)
    # tip height 2 arccos(e^{-t/2}) reaches 0.5 at t = -2 log cos(0.25)
    expected = -2.0 * math.log(math.cos(0.25))
    assert out.fate is Fate.SWALLOWED
    assert abs(out.tau - expected) < 2e-3


def test_far_left_point_escapes_left():
    params = SleParams(kappa=2.0, step=1e-2, t_max=10.0)
    assert evolve_point(complex(-15.0, 1.0), _constant_chain(params), params).fate is Fate.LEFT
    assert evolve_point(complex(15.0, 1.0), _constant_chain(params), params).fate is Fate.RIGHT


def test_upper_boundary_points_are_never_swallowed():
    params = SleParams(kappa=6.0, step=1e-2, t_max=5.0, seed=3)
    chain = driving_batch(params, range(16))
    out = evolve_points(np.array([[complex(x, math.pi)] for x in (-1.0, 0.0, 0.5)]), chain, params)
    assert not np.any(out.kind == Fate.SWALLOWED)


def test_mirrored_driving_mirrors_fates():
    params = SleParams(kappa=6.0, step=1e-2, t_max=8.0, seed=11)
    chain = driving_batch(params, range(8))
    pts = np.array([complex(0.7, 0.4), complex(-1.3, 2.0), complex(2.5, 1.0)])
    fwd = evolve_points(pts[:, None], chain, params).kind
    mir = evolve_points((-pts.conj())[:, None], chain.mirrored(), params).kind
    swap = {Fate.LEFT: Fate.RIGHT, Fate.RIGHT: Fate.LEFT, Fate.SWALLOWED: Fate.SWALLOWED, Fate.UNDECIDED: Fate.UNDECIDED}
    expected = np.vectorize(lambda k: int(swap[Fate(int(k))]))(fwd)
    np.testing.assert_array_equal(mir, expected)


def test_origin_has_no_fate():
    params = SleParams(kappa=2.0, step=1e-2, t_max=1.0)
    with pytest.raises(DomainError):
        evolve_point(0j, _constant_chain(params), params)


def test_constant_driving_trace_matches_closed_form():
    params = SleParams(kappa=2.0, step=1e-3, t_max=2.0, eps_tip=1e-4)
    tr = trace(_constant_chain(params), params)
    exact = constant_driving_trace(tr.times)
    assert tr.points.shape == tr.times.shape == (params.n_steps + 1,)
    np.testing.assert_allclose(tr.points[1:], exact[1:], atol=1e-6)


def test_trace_stays_in_strip():
    params = SleParams(kappa=4.0, step=1e-3, t_max=3.0, seed=5)
    chain = MapChain.from_driving(sample_driving(params, params.n_steps, stream(5, 0)).values, params.step)
    tr = trace(chain, params)
    assert np.all(tr.points.imag >= 0.0)
    assert np.all(tr.points.imag <= math.pi)


def test_trace_rejects_batches():
    params = SleParams(kappa=2.0, step=1e-2, t_max=1.0)
    with pytest.raises(InvalidParameterError):
        trace(driving_batch(params, range(2)), params)


def test_constant_driving_lands_at_zero():
    params = SleParams(kappa=2.0, step=1e-2, t_max=25.0)
    assert abs(endpoint_on_upper_boundary(_constant_chain(params), params, undecided="sign")) <= 1e-3


def test_undecided_bisection_points_raise_by_default():
    # the first midpoint is x* = 0 itself, a fixed point of the upper-boundary flow
    params = SleParams(kappa=2.0, step=1e-2, t_max=25.0)
    with pytest.raises(HorizonTooShortError):
        endpoint_on_upper_boundary(_constant_chain(params), params)


@pytest.mark.parametrize("undecided", ["raise", "sign"])
def test_one_step_horizon_is_too_short(undecided):
    params = SleParams(kappa=6.0, step=1e-2, t_max=1e-2, seed=3)
    with pytest.raises(HorizonTooShortError):
        endpoint_on_upper_boundary(driving_batch(params, range(1)).row(0), params, undecided=undecided)
    with pytest.raises(HorizonTooShortError):
        endpoint_on_upper_boundary(driving_batch(params, range(4)), params, undecided=undecided)


def test_unknown_undecided_policy_is_rejected():
    params = SleParams(kappa=2.0, step=1e-2, t_max=25.0)
    with pytest.raises(InvalidParameterError):
        endpoint_on_upper_boundary(_constant_chain(params), params, undecided="guess")


def test_driving_batch_rows_match_single_streams():
    params = SleParams(kappa=3.0, step=1e-2, t_max=1.0, seed=9)
    chain = driving_batch(params, [4, 7])
    for row, sid in enumerate((4, 7)):
        single = sample_driving(params, params.n_steps, stream(9, sid)).values
        np.testing.assert_array_equal(chain.xi[row], single[:-1])
        assert chain.xi_end[row] == single[-1]


def test_driving_variance_scales_with_kappa():
    params = SleParams(kappa=6.0, step=1e-2, t_max=1.0)
    ends = np.array([sample_driving(params, params.n_steps, stream(0, i)).values[-1] for i in range(2000)])
    # Var xi_1 = kappa
    assert abs(ends.var() / 6.0 - 1.0) < 0.15


def test_mirrored_endpoints_are_antisymmetric():
    params = SleParams(kappa=2.0, step=1e-2, t_max=25.0, seed=2)
    frame = ensemble_endpoints(params, 8, batch_size=3, mirrored=True)
    assert list(frame["stream_id"]) == list(range(8))
    assert (frame["seed"] == 2).all()
    assert (frame["x_star"] + frame["x_star_mirror"]).abs().max() <= 3e-3


def test_endpoints_do_not_depend_on_threads():
    params = SleParams(kappa=6.0, step=1e-2, t_max=25.0, seed=4)
    one = ensemble_endpoints(params, 10, batch_size=4, threads=1)
    many = ensemble_endpoints(params, 10, batch_size=4, threads=3)
    pd.testing.assert_frame_equal(one, many)


def test_fate_counts_cover_every_trace():
    params = SleParams(kappa=6.0, step=1e-2, t_max=5.0, seed=1)
    counts = ensemble_fates([complex(0.5, 1.0), complex(-2.0, 0.5)], params, 20, batch_size=7)
    totals = counts[["swallowed", "left", "right", "undecided"]].sum(axis=1)
    assert (totals == 20).all()


@pytest.mark.parametrize("kappa", [2.0, 3.0, 4.0])
def test_simple_traces_swallow_nothing(kappa):
    params = SleParams(kappa=kappa, step=1e-2, t_max=10.0, seed=7)
    pts = np.array([0.3 + 0.5j, 0.5j * math.pi, -1.0 + 1.2j, 1.0 + 0.3j, 0.5 + 0j, -0.2 + 0j, 2.0 + 0j])
    out = evolve_points(pts[:, None], driving_batch(params, range(128)), params)
    assert not np.any(out.kind == Fate.SWALLOWED)


def test_jump_encloses_the_half_disk_over_it():
    chain = MapChain.from_driving(np.array([0.0, 0.0, 1.0, 1.0]), 1e-3)
    pts = np.array([0.5 + 0j, 0.5 + 0.2j, 0.5 + 2.0j, 1.8 + 0j])
    enclosing = SleParams(kappa=6.0, step=1e-3, t_max=3e-3)
    out = evolve_points(pts, chain, enclosing)
    assert [Fate(int(k)) for k in out.kind[:2]] == [Fate.SWALLOWED, Fate.SWALLOWED]
    np.testing.assert_allclose(out.tau[:2], 2.5e-3)
    assert not np.any(out.kind[2:] == Fate.SWALLOWED)

    simple = SleParams(kappa=3.0, step=1e-3, t_max=3e-3)
    assert not np.any(evolve_points(pts, chain, simple).kind == Fate.SWALLOWED)


@pytest.mark.slow
def test_boundary_swallowing_brackets_the_hitting_law():
    params = SleParams(kappa=6.0, step=1e-3, t_max=25.0, seed=21)
    n = 2000
    freq = lower_boundary_swallow_frequency([-1.0, 0.5, 2.0], params, n)
    for row in freq.itertuples(index=False):
        p = p_in_real(row.x, 6.0)
        slack = 3.0 * math.sqrt(p * (1 - p) / n) + 0.01
        # undecided points are swallowed later or never
        assert row.swallowed / n <= p + slack
        assert (row.swallowed + row.undecided) / n >= p - slack
