"""Exception types shared across the package."""


class SpringLegError(Exception):
    """Base class for all springleg-specific errors."""


class ConfigurationError(SpringLegError, ValueError):
    """A parameter or configuration value violates a documented bound."""


class DomainError(SpringLegError, ValueError):
    """An operation argument lies outside its admissible range."""


class SimulationError(SpringLegError, RuntimeError):
    """The simulation reached a physically infeasible state."""


class StallError(SimulationError):
    """No further spring compression is possible from the current state."""


class GeometryError(SimulationError):
    """A requested posture lies outside the leg's range of motion."""


class DataError(SpringLegError, ValueError):
    """Measured input data is inconsistent or insufficient."""
