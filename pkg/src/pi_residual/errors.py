"""Exception hierarchy shared by all modules."""


class PiError(Exception):
    """Base class for every error raised by the package."""


class OutOfRange(PiError):
    pass


class IllFormed(PiError):
    pass


class DomainMismatch(PiError):
    pass


class InvalidDerivation(PiError):
    pass


class NotCoinitial(PiError):
    pass


class NotConcurrent(PiError):
    pass


class EndpointMismatch(PiError):
    pass


class CompositionMismatch(PiError):
    pass


class CofinalityViolation(PiError):
    """Residuals failed to close a square; this should never happen, so it signals a bug."""


class PiSyntaxError(PiError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class UnboundName(PiError):
    pass
