"""Exception hierarchy shared across the package."""


class RegenError(Exception):
    """Base class for every error raised by regenplace."""


class InvalidInstanceError(RegenError, ValueError):
    """A topology, lightpath or instance file is malformed."""


class CapacityError(RegenError):
    """A placement would exceed the per-node regenerator cap k."""


class InvariantViolation(RegenError):
    """An online algorithm broke one of its guaranteed postconditions."""


class UncoverableElementError(RegenError, ValueError):
    """An element belongs to no set."""


class FrequencyBoundError(RegenError, ValueError):
    """An element belongs to more sets than the declared frequency bound."""


class OracleLimitError(RegenError):
    """An exact oracle was asked to solve an instance beyond its size limit."""


class AdversaryError(RegenError):
    """The algorithm under attack fell outside the adversary's case analysis."""
