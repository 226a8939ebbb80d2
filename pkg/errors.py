"""Exception hierarchy shared by the numerical modules and the CLI.

Every error carries the process exit code the CLI reports for it:
2 when a mathematical precondition fails, 3 for I/O and parsing,
4 for shape mismatches.
"""

EXIT_OK = 0
EXIT_CONDITION = 2
EXIT_IO = 3
EXIT_SHAPE = 4


class FrameMultError(Exception):
    exit_code = 1


class ShapeMismatchError(FrameMultError, ValueError):
    exit_code = EXIT_SHAPE


class NotAFrameError(FrameMultError):
    exit_code = EXIT_CONDITION


class SymbolError(FrameMultError, ValueError):
    exit_code = EXIT_CONDITION


class ConditionViolatedError(FrameMultError):
    """A sufficient condition of an inversion scheme does not hold.

    This says nothing about whether the operator is singular.
    """

    exit_code = EXIT_CONDITION

    def __init__(self, message: str, constants: dict | None = None):
        super().__init__(message)
        self.constants = dict(constants or {})


class SingularMatrixError(FrameMultError):
    exit_code = EXIT_CONDITION


class WindowError(FrameMultError, ValueError):
    exit_code = EXIT_CONDITION


class NotADualError(FrameMultError):
    exit_code = EXIT_CONDITION


class UsageError(FrameMultError):
    """Bad command-line arguments."""

    exit_code = EXIT_IO


class ParseError(FrameMultError):
    exit_code = EXIT_IO

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class WavFormatError(FrameMultError):
    exit_code = EXIT_IO

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"offset {offset}: {message}"
        super().__init__(message)
        self.offset = offset


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, FrameMultError):
        return exc.exit_code
    if isinstance(exc, (OSError, ValueError)):
        return EXIT_IO
    return 1
