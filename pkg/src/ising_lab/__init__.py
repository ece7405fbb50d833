"""Critical Ising strip with a frozen +- row, antiperiodic seam and interface tracing."""

from .dynamics import binning_error, cluster_sweep, metropolis_sweep
from .experiment import ExperimentResult, RunConfig, run_experiment
from .interface import InterfaceSample, trace_interface
from .lattice import BETA_C, SpinLattice, build_lattice

__all__ = [
    "BETA_C",
    "SpinLattice",
    "build_lattice",
    "cluster_sweep",
    "metropolis_sweep",
    "binning_error",
    "InterfaceSample",
    "trace_interface",
    "RunConfig",
    "ExperimentResult",
    "run_experiment",
]
