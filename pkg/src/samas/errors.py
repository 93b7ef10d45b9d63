"""Exception hierarchy shared across the pipeline."""


class SamasError(Exception):
    """Base class for all pipeline errors."""


class EmptySegment(SamasError):
    pass


class SignalTooShort(SamasError):
    pass


class OddLength(SamasError):
    pass


class IndivisibleLength(SamasError):
    pass


class UnsupportedLevel(SamasError):
    pass


class ShapeMismatch(SamasError):
    pass


class ZeroEnergy(SamasError):
    pass


class InvalidDistribution(SamasError):
    pass


class DegenerateLabels(SamasError):
    pass


class EmptyInput(SamasError):
    pass


class ProfileUnachievable(SamasError):
    pass


class EmptyReference(SamasError):
    pass


class ConfigError(SamasError):
    pass


class TransportError(SamasError):
    """Retriable failure talking to a chat backend."""


class BackendFailure(SamasError):
    """A stage exhausted its retries. ``trace`` holds the stages completed so far."""

    def __init__(self, role, attempts, trace=None, cause=None):
        super().__init__(f"{role.value}: backend failed after {attempts} attempt(s): {cause}")
        self.role = role
        self.attempts = attempts
        self.trace = trace
        self.cause = cause


class EmptyResponse(SamasError):
    def __init__(self, role, trace=None):
        super().__init__(f"{role.value}: backend returned an empty response")
        self.role = role
        self.trace = trace
