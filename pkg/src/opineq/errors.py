"""Exception hierarchy shared by all modules."""


class OpIneqError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(OpIneqError):
    pass


class NotSquare(OpIneqError):
    pass


class NoConvergence(OpIneqError):
    pass


class KernelMismatch(OpIneqError):
    """ker(T) and ker(T*) differ, so no finite (alpha, beta) pair exists."""


class ZeroOperator(OpIneqError):
    pass


class AlphaZero(OpIneqError):
    pass


class NotMajorized(OpIneqError):
    """Range containment ran(T) in ran(S) fails."""


class BadParams(OpIneqError):
    pass


class BadSpec(OpIneqError):
    pass


class MatrixParseError(OpIneqError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
