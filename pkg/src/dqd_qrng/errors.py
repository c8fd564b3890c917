class QRNGError(Exception):
    """Base class for errors raised by this package."""


class InvalidDeviceError(QRNGError, ValueError):
    """Device parameters that do not describe a coupled double dot."""


class DomainError(QRNGError, ValueError):
    """Argument outside the domain of a physical formula."""


class UnreachableBiasError(DomainError):
    """Requested mean of exactly 0 or 1, which needs infinite detuning."""


class ConfigError(QRNGError, ValueError):
    """Inconsistent timing or run configuration."""


class ShapeError(QRNGError, ValueError):
    """Bit streams with mismatched lengths."""


class ParseError(QRNGError, ValueError):
    """Malformed serialized bit stream.

    ``offset`` is the byte offset at which the problem was detected.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class CorrelatedInputWarning(UserWarning):
    """Stochastic-computing operands that share a random source."""
