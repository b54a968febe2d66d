"""Exception and warning types raised across the package."""


class MorswitchError(Exception):
    """Base class for all package errors."""


class InvalidParams(MorswitchError, ValueError):
    pass


class SingularSystem(MorswitchError, ArithmeticError):
    """The constrained steady-state system is numerically rank deficient."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class StepTooLarge(MorswitchError, ArithmeticError):
    """Time integration diverged; the step is outside the RK4 stability region."""


class GeometryUnsupported(MorswitchError, ValueError):
    pass


class QuadratureNotConverged(MorswitchError, ArithmeticError):
    pass


class NumericalError(MorswitchError, ArithmeticError):
    """A lower-level numerical failure annotated with the probe detuning."""

    def __init__(self, delta, cause):
        super().__init__(f"numerical failure at delta={delta!r}: {cause}")
        self.delta = delta
        self.cause = cause


class ConfigError(MorswitchError, ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, key=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.key = key


class UnknownKey(ParseError):
    pass


class MissingKey(ConfigError):
    def __init__(self, key):
        super().__init__(f"missing required key: {key}")
        self.key = key


class GridTooLarge(ConfigError):
    pass


class GainWarning(RuntimeWarning):
    """Im(chi) < 0 somewhere: the medium amplifies and T_y may exceed 1."""


class UndefinedBaseline(RuntimeWarning):
    """Control-off transmission underflowed; the enhancement factor is reported as +inf."""
