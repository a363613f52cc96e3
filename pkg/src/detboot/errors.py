"""Exception hierarchy shared by every module of the package."""


class DetbootError(ValueError):
    """Base class for all errors raised by detboot."""


class EmptySample(DetbootError):
    pass


class NonFiniteValue(DetbootError):
    pass


class InvalidPeriod(DetbootError):
    pass


class MismatchedGrid(DetbootError):
    pass


class InvalidSpec(DetbootError):
    pass


class TotalMassError(DetbootError):
    pass


class AlphaOutOfRange(DetbootError):
    pass


class AllMassDropped(DetbootError):
    pass


class BlockLengthMismatch(DetbootError):
    pass


class EnumerationTooLarge(DetbootError):
    pass


class ParseError(DetbootError):
    """Raised when a sample file line cannot be read as a number."""

    def __init__(self, path, lineno, text):
        self.path = path
        self.lineno = lineno
        self.text = text
        super().__init__(f"{path}:{lineno}: cannot parse {text!r} as a number")
