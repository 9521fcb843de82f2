"""
Exception hierarchy shared by every package module.

Each error class carries the CLI exit code it maps to.
"""

from typing import Optional, Union
from pathlib import Path


USAGE_EXIT = 1
SCHEMA_EXIT = 2
NUMERIC_EXIT = 3


class IdMixError(Exception):
    """Base exception for all engine errors."""

    exit_code = USAGE_EXIT


class DimensionError(IdMixError):
    """Raised when operand shapes do not fit together."""

    exit_code = NUMERIC_EXIT


class NumericError(IdMixError):
    """Raised when a value that must be finite is NaN or infinite."""

    exit_code = NUMERIC_EXIT


class StateError(IdMixError):
    """Raised when a backward pass is given a stale or consumed cache."""

    exit_code = NUMERIC_EXIT


class SchemaError(IdMixError):
    """
    Raised for malformed data files or configuration.

    Args:
        message: Human readable description
        path: Offending file, if any
        line: 1-based line number within ``path``, if any
    """

    exit_code = SCHEMA_EXIT

    def __init__(
        self,
        message: str,
        path: Optional[Union[str, Path]] = None,
        line: Optional[int] = None,
    ):
        self.message = message
        self.path = str(path) if path is not None else None
        self.line = line
        super().__init__(self._render())

    def _render(self) -> str:
        if self.path is None:
            return self.message
        if self.line is None:
            return f"{self.path}: {self.message}"
        return f"{self.path}:{self.line}: {self.message}"


class DegenerateBatchError(SchemaError):
    """Raised when a batch has too few rows for the requested operation."""


class DegenerateLabelError(SchemaError):
    """Raised when a probe training split contains a single class."""
