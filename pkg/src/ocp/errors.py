"""Exception hierarchy shared by the package."""


class OcpError(Exception):
    """Base class for all package errors."""


class InstanceError(OcpError):
    """An instance violates a structural invariant."""


class ParseError(InstanceError):
    """A document could not be parsed; ``location`` points at the offending field."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class MalformedCertificateError(OcpError):
    """A covering references an edge id the instance does not define."""


class ConfigurationError(OcpError):
    pass


class PreconditionError(OcpError):
    pass


class SolverCapacityError(OcpError):
    """A solver guard (state space, edge count) would be exceeded."""


class ReductionSoundnessError(OcpError):
    """Structure extracted from a budget-feasible covering is not a valid 3-partition.

    Never raised for a correct implementation; it exists so that a soundness
    bug shows up as a loud failure instead of a wrong answer.
    """
