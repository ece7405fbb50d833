"""Discretized dipolar Loewner evolution in the strip {0 < Im z < pi*delta}."""

from .params import SleParams
from .maps import SWALLOWED, SwallowedFlag, elementary_inverse, elementary_map
from .evolve import (
    DrivingPath,
    Fate,
    MapChain,
    PointFate,
    Trace,
    endpoint_on_upper_boundary,
    evolve_point,
    sample_driving,
    trace,
)

__all__ = [
    "SleParams",
    "SWALLOWED",
    "SwallowedFlag",
    "elementary_map",
    "elementary_inverse",
    "DrivingPath",
    "Fate",
    "MapChain",
    "PointFate",
    "Trace",
    "sample_driving",
    "evolve_point",
    "trace",
    "endpoint_on_upper_boundary",
]
