"""Exception hierarchy shared by every mwkit module."""


class MWKitError(Exception):
    """Base class for all library errors."""


class InvalidParameters(MWKitError, ValueError):
    pass


class SingularAtFocus(MWKitError, ValueError):
    """The cartesian field (or chart map) was evaluated at the focus F."""


class StartAtFocus(SingularAtFocus):
    pass


class NonFiniteState(MWKitError, FloatingPointError):
    """An accepted integration step produced NaN or Inf."""


class OutOfSpan(MWKitError, ValueError):
    pass


class NoInteriorEquilibrium(MWKitError, ValueError):
    pass


class NoSaddle(MWKitError, ValueError):
    """Raised when the chart point S+ is not a hyperbolic saddle (omega <= 1)."""


# the name used by the slope query; same condition
NoSaddleAtSPlus = NoSaddle


class DegenerateParameter(MWKitError, ValueError):
    """Parameter sits on a bifurcation value where a strict verdict is ill-posed."""
