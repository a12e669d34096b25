"""Exception hierarchy shared by all modules."""


class OpotlError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OpotlError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConflictError(OpotlError):
    def __init__(self, a, b, old, new):
        self.pair = (a, b)
        super().__init__(f"conflicting relations for ({a}, {b}): {old.value} and {new.value}")


class InvalidLabelSet(OpotlError):
    pass


class UnknownProp(OpotlError):
    pass


class MissingStructuralLabel(OpotlError):
    pass


class AdjacentPrecedenceUndefined(OpotlError):
    def __init__(self, i):
        self.position = i
        super().__init__(f"no precedence relation between positions {i} and {i + 1}")


class PositionError(OpotlError):
    pass


class GenerationFailure(OpotlError):
    pass


class IncompatibleWord(OpotlError):
    def __init__(self, i, j):
        self.positions = (i, j)
        super().__init__(f"precedence undefined between positions {i} and {j}")


class ParseStuck(OpotlError):
    pass


class UndefinedPrecedence(OpotlError):
    def __init__(self, top, lookahead):
        self.top = top
        self.lookahead = lookahead
        super().__init__(f"precedence undefined between {top} and {lookahead}")


class CapExceeded(OpotlError):
    pass


class UnsupportedOperator(OpotlError):
    pass


class UnboundVariable(OpotlError):
    pass


class WordTooLarge(OpotlError):
    pass


class QuantifierDepthExceeded(OpotlError):
    pass


class NodeNotFound(OpotlError):
    pass


class IncompatibleTree(OpotlError):
    pass
