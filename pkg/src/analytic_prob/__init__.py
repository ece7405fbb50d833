"""Branch-aware quadrature for the dipolar SLE visiting and excursion probabilities."""

from .cft import CftConstants, cft_constants, h_rs
from .fields import (
    ProbField,
    endpoint_density,
    p_in,
    p_left,
    p_right,
    p_up,
    prob_field,
)
from .integrals import F, QuadConfig, const_I, const_J, integrand
from .residuals import ResidualCertificate, hitting_ode_residual, pde_residual

__all__ = [
    "CftConstants",
    "cft_constants",
    "h_rs",
    "ProbField",
    "prob_field",
    "p_left",
    "p_right",
    "p_in",
    "p_up",
    "endpoint_density",
    "F",
    "QuadConfig",
    "const_I",
    "const_J",
    "integrand",
    "ResidualCertificate",
    "pde_residual",
    "hitting_ode_residual",
]
