"""Exception hierarchy shared by every module of the package."""


class EconCruiseError(Exception):
    """Base class for all errors raised by econ_cruise."""


class DomainError(EconCruiseError, ValueError):
    """An input lies outside the domain of a model function."""


class NoNonnegativeCI(DomainError):
    """A target speed cannot be reached with any cost index >= 0."""


class FuelExhaustion(EconCruiseError):
    """The leg would burn more fuel than is on board."""


class BatteryDepleted(EconCruiseError):
    """The leg would drain the battery below zero charge."""


class InfeasibleLeg(EconCruiseError):
    """No speed in the flight envelope can complete the leg."""


class SolverFailure(EconCruiseError):
    """The optimality-condition refinement did not converge."""


class ConfigError(EconCruiseError, ValueError):
    """A configuration or scenario file is malformed.

    ``path`` is the dotted key path of the offending entry, or an empty
    string when the problem is not tied to a single key.
    """

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
