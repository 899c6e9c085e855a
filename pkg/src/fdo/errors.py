class FdoError(Exception):
    """Base class for all errors raised by this package."""


class InvalidConfig(FdoError, ValueError):
    pass


class DimensionMismatch(InvalidConfig):
    pass


class InvertedBounds(InvalidConfig):
    pass


class UnknownObjective(InvalidConfig, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class PaperAlternatingRequiresTwoDims(InvalidConfig):
    pass


class TableExhausted(FdoError, RuntimeError):
    """Replay asked for more random draws than the fixed table holds."""


class NonFiniteFitness(FdoError, ArithmeticError):
    """The objective returned NaN or an infinity."""


class EmptyBatch(FdoError, ValueError):
    pass


class TraceMonotonicityError(FdoError, AssertionError):
    """Best-so-far history moved backwards; indicates an engine bug."""
