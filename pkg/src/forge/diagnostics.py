"""Diagnostics: source spans, coded findings, and their one-line rendering."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal

Severity = Literal["error", "warning"]

_CODE_RE = re.compile(r"[EW][0-9]{3}")


@dataclass(frozen=True)
class SourceSpan:
    """1-based line/column position plus a character length."""

    line: int
    column: int
    length: int = 0

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 0:
            raise ValueError("span requires line >= 1, column >= 1, length >= 0")


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: SourceSpan

    def __post_init__(self) -> None:
        if not _CODE_RE.fullmatch(self.code):
            raise ValueError(f"malformed diagnostic code: {self.code!r}")
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def sort_key(self) -> tuple[int, int, str]:
        return (self.span.line, self.span.column, self.code)


def render_diagnostic(d: Diagnostic, file: str) -> str:
    """Render as ``<severity>[<code>]: <message> at <file>:<line>:<col>``."""
    return f"{d.severity}[{d.code}]: {d.message} at {file}:{d.span.line}:{d.span.column}"


def error(code: str, message: str, span: SourceSpan | None = None) -> Diagnostic:
    return Diagnostic("error", code, message, span or SourceSpan(1, 1, 0))


def warning(code: str, message: str, span: SourceSpan | None = None) -> Diagnostic:
    return Diagnostic("warning", code, message, span or SourceSpan(1, 1, 0))
