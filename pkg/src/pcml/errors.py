"""Exception types shared across the package."""


class PcmlError(Exception):
    """Base class for all errors raised by this package."""


class NotATree(PcmlError):
    pass


class NotAForest(PcmlError):
    pass


class TooSmall(PcmlError):
    """Raised when an operation needs at least two vertices."""


class NotInDerivedSubalgebra(PcmlError):
    """The module action is only defined on elements without length-1 terms."""


class InvalidMapSpec(PcmlError):
    pass


class InvalidInput(PcmlError):
    pass


class AdjacentPair(PcmlError):
    """Annihilator queries require a non-adjacent generator pair."""


class ZeroCoefficient(PcmlError):
    pass


class DegreeMismatch(PcmlError):
    pass


class NoNonEndpoint(PcmlError):
    pass


class PhiSearchExhausted(PcmlError):
    """The (lambda, p) search bound was exhausted without a certified map.

    A suitable pair always exists, so this signals an undersized bound,
    not impossibility.
    """

    def __init__(self, max_lambda: int, max_p: int):
        super().__init__(
            f"no injective map found within lambda<={max_lambda} p<={max_p}"
        )
        self.max_lambda = max_lambda
        self.max_p = max_p


class ParseError(PcmlError):
    """Syntax error with a 1-based (line, column) position."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class SemanticError(PcmlError):
    pass
