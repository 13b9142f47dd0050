"""Exception types shared across the package."""


class SpecradError(Exception):
    """Base class for all specrad errors."""


class ZeroConstantTerm(SpecradError):
    """Series reciprocal requires a nonzero constant term."""


class NonzeroInnerConstant(SpecradError):
    """Series composition requires the inner series to vanish at 0."""


class NonSquareConstant(SpecradError):
    """Exact series square root requires the constant term to be a rational square."""


class NotInvertible(SpecradError):
    """Series reversion requires valuation exactly 1."""


class TruncationMismatch(SpecradError):
    """Coefficient dominance is only defined for equal truncation orders."""


class DomainError(SpecradError):
    """Parameters outside the mathematical domain of an operation."""


class NoRootInUnitInterval(SpecradError):
    """No sign change found for the discount equation in (0, 1]."""


class MinimizationFailed(SpecradError):
    """No bracketing triple found for a scalar minimization."""


class SizeLimit(SpecradError):
    """A graph construction would exceed the configured vertex cap."""


class RadiusTooSmall(SpecradError):
    """Walk counting needs n_max <= 2 * complete_radius."""


class NotATessellation(SpecradError):
    """(d-2)(m-2) >= 4 is required for a planar {m,d} tessellation."""
