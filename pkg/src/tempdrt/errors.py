"""Error types shared across the package.

The CLI maps every subclass of TempdrtError to exit code 1.
"""

from __future__ import annotations


class TempdrtError(Exception):
    pass


class LexicalError(TempdrtError):
    """Unrecognized character in the input text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class UnknownWordError(TempdrtError):
    def __init__(self, word: str):
        super().__init__(f"unknown word: {word!r}")
        self.word = word


class ParseError(TempdrtError):
    pass


class ResolutionError(TempdrtError):
    pass


class ConstructionError(TempdrtError):
    pass


class MergeError(TempdrtError):
    pass


class TermSyntaxError(TempdrtError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


class ModelLoadError(TempdrtError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EvaluationError(TempdrtError):
    pass
