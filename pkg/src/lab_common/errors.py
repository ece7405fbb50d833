from __future__ import annotations


class LabError(ValueError):
    """Base class for every error raised by the lab packages."""


class InvalidParameterError(LabError):
    pass


class DomainError(LabError):
    """Input lies outside the domain where an operation is defined."""


class SingularInputError(DomainError):
    pass


class DivergentIntegralError(DomainError):
    pass


class UnsupportedRegimeError(DomainError):
    pass


class HorizonTooShortError(DomainError):
    pass


class GeometryError(DomainError):
    pass


class MalformedConfigurationError(DomainError):
    pass


class ContractError(DomainError):
    pass


class EmptySampleError(DomainError):
    pass


def require_finite(name: str, *values: complex | float) -> None:
    import math

    for v in values:
        c = complex(v)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise InvalidParameterError(f"{name} must be finite (got {v!r})")
