"""Exception types shared across the toolkit."""


class CtrError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(CtrError, ValueError):
    """An operation received arguments outside its domain."""


class ConfigurationError(CtrError, ValueError):
    """A tube set or joint configuration violates a structural invariant.

    The message names the violated invariant so API clients can surface it.
    """


class DegeneratePlaneError(CtrError):
    """Equilibrium bending plane is undefined (curvature contributions cancel).

    Carries the resultant curvature, which is zero by definition.
    """

    def __init__(self, message="equilibrium bending plane is undefined"):
        super().__init__(message)
        self.resultant_curvature = 0.0


class AxisConfigError(CtrError, ValueError):
    """Axis mapping is missing or inconsistent for the requested tube set."""


class GcodeParseError(CtrError, ValueError):
    """A line could not be tokenized into a command.

    ``column`` is the 1-based position of the offending character.
    """

    def __init__(self, message, column):
        super().__init__(f"{message} (column {column})")
        self.column = column


class UnsupportedCommandError(CtrError, ValueError):
    """A syntactically valid word is outside the frozen command dialect."""

    def __init__(self, message, line=""):
        super().__init__(message)
        self.line = line


class JointLimitError(CtrError):
    """A move would place an axis outside its configured limits."""

    def __init__(self, axis, value, low, high):
        super().__init__(
            f"axis {axis} target {value:.3f} outside limits [{low:.3f}, {high:.3f}]"
        )
        self.axis = axis
        self.value = value
        self.limits = (low, high)


class NotHomedError(CtrError):
    """A motion command was issued before the controller was homed."""


class DegenerateGeometryError(CtrError, ValueError):
    """Point set is too small or collinear for a rigid registration."""


class MissingRegistrationError(CtrError):
    """A tracker-frame comparison was requested without a frame registration."""
