"""Exception types raised across the package."""


class SemipolarError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SemipolarError, ValueError):
    pass


class ZeroVector(SemipolarError, ValueError):
    pass


class NonSmoothNorm(SemipolarError, ValueError):
    """Gradient-based operation requested on a norm flagged non-smooth."""


class DegenerateInput(SemipolarError, ValueError):
    pass


class Unbounded(SemipolarError, ValueError):
    pass


class EmptyInterior(SemipolarError, ValueError):
    pass


class OriginNotInterior(SemipolarError, ValueError):
    pass


class SingularForm(SemipolarError, ValueError):
    """Matrix is not a nondegenerate skew-symmetric form."""


class NotSymplectomorphism(SemipolarError, ValueError):
    pass


class PreconditionFailed(SemipolarError):
    pass


class ConfigError(SemipolarError, ValueError):
    """Malformed JSON configuration."""
