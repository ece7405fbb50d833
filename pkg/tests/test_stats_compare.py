import math

import numpy as np
import pytest
from scipy import integrate, stats

from analytic_prob import const_I
from lab_common.errors import ContractError, DomainError, EmptySampleError, InvalidParameterError, UnsupportedRegimeError
from loewner import SleParams
from stats_compare import (
    dk_critical,
    empirical_cdf,
    horizon_weights,
    ising_reduced_density,
    ising_theory_cdf,
    martingale_constancy_test,
    max_cdf_distance,
    max_cdf_distance_lattice,
    resolved_fate_counts,
    scaling_fit,
    sle_endpoint_cdf,
)


def test_empirical_cdf_steps():
    emp = empirical_cdf([3.0, 1.0, 2.0])
    assert emp.n == 3
    assert emp(0.5) == 0.0
    assert emp(2.0) == pytest.approx(2 / 3)
    np.testing.assert_allclose(emp(np.array([1.0, 10.0])), [1 / 3, 1.0])
    with pytest.raises(EmptySampleError):
        empirical_cdf([])


def test_single_sample_at_median():
    report = max_cdf_distance(empirical_cdf([0.0]), sle_endpoint_cdf(3.0))
    assert report.delta == pytest.approx(0.5, abs=1e-12)


def test_distance_to_itself_is_zero():
    emp = empirical_cdf(stats.norm.rvs(size=200, random_state=1))
    assert max_cdf_distance(emp, emp).delta == pytest.approx(0.0, abs=1e-12)


def test_samples_from_the_law_pass():
    samples = stats.norm.rvs(size=2000, random_state=7)
    report = max_cdf_distance(empirical_cdf(samples), stats.norm.cdf, alpha=0.001)
    assert report.delta < dk_critical(2000, alpha=0.001)
    assert report.passed


def test_shifted_quantiles_give_the_shift_distance():
    n = 1000
    samples = stats.norm.ppf((np.arange(n) + 0.5) / n) + 0.5
    expected = 2.0 * stats.norm.cdf(0.25) - 1.0
    delta = max_cdf_distance(empirical_cdf(samples), stats.norm.cdf).delta
    assert abs(delta - expected) <= 1.0 / n + 1e-6


def test_distance_is_invariant_under_monotone_maps():
    samples = stats.norm.rvs(size=300, random_state=3)
    direct = max_cdf_distance(empirical_cdf(samples), stats.logistic.cdf).delta
    mapped = max_cdf_distance(empirical_cdf(np.exp(samples)), lambda y: stats.logistic.cdf(np.log(y))).delta
    assert mapped == pytest.approx(direct, abs=1e-12)


def test_decreasing_theory_is_a_contract_error():
    with pytest.raises(ContractError):
        max_cdf_distance(empirical_cdf([-1.0, 0.0, 1.0]), lambda x: 1.0 - stats.norm.cdf(x))


def test_lattice_distance_uses_half_integer_correction():
    theory = lambda x: np.clip((np.asarray(x) + 0.5) / 10.0, 0.0, 1.0)
    report = max_cdf_distance_lattice(list(range(10)), theory)
    assert report.delta < 1e-12


def test_critical_value_scales_like_root_n():
    assert dk_critical(10_000) * math.sqrt(10_000) == pytest.approx(1.628, rel=0.02)
    assert dk_critical(100) > dk_critical(1000)


def test_ising_theory_is_symmetric():
    cdf = ising_theory_cdf(16)
    assert float(cdf(0.0)) == pytest.approx(0.5, abs=1e-12)
    assert float(cdf(3.0)) + float(cdf(-3.0)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidParameterError):
        ising_theory_cdf(0)


def test_reduced_density_is_the_cdf_derivative():
    assert float(ising_reduced_density(0.0)) == pytest.approx(math.pi / 5.17422, rel=1e-5)
    L, h = 20, 1e-4
    cdf = ising_theory_cdf(L)
    for xp in (-0.7, 0.0, 0.4, 1.5):
        slope = (float(cdf(L * (xp + h))) - float(cdf(L * (xp - h)))) / (2 * h)
        assert slope == pytest.approx(float(ising_reduced_density(xp)), rel=1e-6)


def test_reduced_density_is_normalised():
    total, _ = integrate.quad(lambda x: float(ising_reduced_density(x)), -np.inf, np.inf)
    assert total == pytest.approx(1.0, abs=1e-8)
    assert const_I(3.0) == pytest.approx(5.17422, abs=1e-4)


def test_scaling_fit_recovers_exact_power_law():
    fit = scaling_fit([(L, 2.0 / L) for L in (8, 12, 16, 24)])
    assert fit.exponent == pytest.approx(-1.0, abs=1e-12)
    assert fit.quality < 1e-12
    assert fit.within_band and fit.decaying


def test_scaling_fit_tolerates_noise():
    noise = (1.05, 0.95, 1.05, 0.95)
    fit = scaling_fit([(L, m / L) for L, m in zip((8, 12, 16, 24), noise)])
    assert -1.5 <= fit.exponent <= -0.5
    assert fit.within_band


def test_scaling_fit_flags_flat_deltas():
    fit = scaling_fit([(L, 0.1) for L in (8, 12, 16)])
    assert fit.exponent == pytest.approx(0.0, abs=1e-12)
    assert not fit.decaying and not fit.within_band


def test_scaling_fit_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        scaling_fit([(8, 0.1), (16, 0.05)])
    with pytest.raises(DomainError):
        scaling_fit([(8, 0.1), (16, 0.0), (24, 0.02)])


def test_martingale_at_time_zero_is_exact():
    report = martingale_constancy_test(6.0, complex(0.5, 1.5), times=[0.0], n_traces=4, step=1e-2)
    assert report.means[0] == pytest.approx(report.reference, abs=1e-15)
    assert report.compatible


def test_martingale_rejects_bad_arguments():
    with pytest.raises(UnsupportedRegimeError):
        martingale_constancy_test(3.0, complex(0.5, 1.5), times=[0.0, 1.0], n_traces=4)
    with pytest.raises(InvalidParameterError):
        martingale_constancy_test(6.0, complex(0.5, 1.5), times=[1.0, 0.5], n_traces=4)
    with pytest.raises(DomainError):
        martingale_constancy_test(6.0, complex(0.5, 1.5), times=[0.0], n_traces=4, field="p_up")


@pytest.mark.slow
def test_stopped_field_is_constant_on_average():
    report = martingale_constancy_test(
        6.0, complex(0.5, 1.5), times=[0.0, 0.5, 1.0], n_traces=1000, seed=12, step=1e-3, n_sigma=4.0
    )
    assert report.compatible, report.to_dict()


@pytest.mark.parametrize("w", [complex(0.5, 1.0), complex(-2.0, 0.3), complex(1.5, 0.0), complex(-0.7, 0.0)])
def test_horizon_weights_split_unity(w):
    inside, left, right = horizon_weights(w, 6.0)
    assert inside + left + right == pytest.approx(1.0, abs=1e-7)
    assert min(inside, left, right) >= -1e-9
    if w.imag == 0.0:
        # a real image can only be swallowed or leave on its own side
        assert (left if w.real > 0 else right) == 0.0


def test_resolved_counts_split_every_trace():
    params = SleParams(kappa=6.0, step=1e-2, t_max=2.0, seed=5)
    counts = resolved_fate_counts([complex(0.5, 1.0), complex(-1.0, 0.5), complex(0.8, 0.0)], params, 12, batch_size=5)
    totals = counts[["swallowed", "left", "right"]].sum(axis=1)
    np.testing.assert_allclose(totals, 12.0, atol=1e-6)
    assert (counts["undecided"] > 0).any()
    assert list(counts.columns) == ["re", "im", "n", "swallowed", "left", "right", "undecided"]


def test_resolved_counts_need_an_enclosing_regime():
    with pytest.raises(UnsupportedRegimeError):
        resolved_fate_counts([complex(0.5, 1.0)], SleParams(kappa=3.0, step=1e-2, t_max=1.0), 4)
