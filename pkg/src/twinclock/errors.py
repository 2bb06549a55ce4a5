"""Exception hierarchy shared by the library and the command line."""


class TwinClockError(Exception):
    """Base class for all package errors."""


class RindlerWedgeError(TwinClockError, ValueError):
    """The cavity does not fit inside a single Rindler wedge (h >= 2)."""


class DegenerateStateError(TwinClockError, ArithmeticError):
    """The first-mode amplitude vanished, so no phase can be read off."""


class QuadratureError(TwinClockError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class ConfigError(TwinClockError, ValueError):
    """A run configuration failed validation."""
