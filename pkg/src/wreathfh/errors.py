"""Error types shared across the library, with CLI exit codes."""


class WreathFHError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidParameterError(WreathFHError, ValueError):
    """A precondition on an argument was violated."""

    exit_code = 2


class UnsupportedCharacterFieldError(WreathFHError):
    """Operation needs a rational character table (or integer central
    characters) that the group does not provide."""

    exit_code = 3


class ResourceLimitError(WreathFHError):
    """A brute-force enumeration would exceed the configured cap."""

    exit_code = 4


class DegreeCapExceededError(WreathFHError):
    """Interpolation did not stabilise within the degree cap.

    Carries the sampled data so the caller can inspect it.
    """

    exit_code = 5

    def __init__(self, message, n0=None, values=None):
        super().__init__(message)
        self.n0 = n0
        self.values = list(values) if values is not None else []


class ValidationError(WreathFHError):
    """Input data (group file, character table) failed validation."""

    exit_code = 6


class NotCentralError(WreathFHError):
    """An algebra element expected to be central is not class-constant."""

    exit_code = 6
