"""Exception hierarchy shared by all finqsim modules."""


class FinqsimError(Exception):
    """Base class for all finqsim errors."""


class ValidationError(FinqsimError):
    """Malformed input: bad flags, unknown config keys, unwritable paths."""


class DomainError(FinqsimError):
    """Numerically meaningless request: singular geometry, out-of-domain argument."""


class InconsistentMeasurementError(DomainError):
    """Readout inference failed; carries the offending channel indices."""

    def __init__(self, message, channels=()):
        super().__init__(message)
        self.channels = tuple(channels)
