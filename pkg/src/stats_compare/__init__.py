"""Empirical distributions, the max-CDF-distance statistic, scaling fits and martingale checks."""

from .ecdf import (
    ComparisonReport,
    EmpiricalCdf,
    dk_critical,
    empirical_cdf,
    max_cdf_distance,
    max_cdf_distance_lattice,
)
from .fates import horizon_weights, resolved_fate_counts
from .martingale import MartingaleReport, martingale_constancy_test
from .scaling import ScalingFit, scaling_fit
from .theory import ising_reduced_density, ising_theory_cdf, sle_endpoint_cdf

__all__ = [
    "ComparisonReport",
    "EmpiricalCdf",
    "dk_critical",
    "empirical_cdf",
    "max_cdf_distance",
    "max_cdf_distance_lattice",
    "horizon_weights",
    "resolved_fate_counts",
    "MartingaleReport",
    "martingale_constancy_test",
    "ScalingFit",
    "scaling_fit",
    "ising_reduced_density",
    "ising_theory_cdf",
    "sle_endpoint_cdf",
]
