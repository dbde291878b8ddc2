"""Generated file trees and the plain-text template machinery behind them."""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path


class GenerationError(Exception):
    """Raised when a generator cannot produce its output (not a model diagnostic)."""

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        self.code = code


class GeneratedProject:
    """An ordered map of relative file paths to byte contents.

    Paths are ``/``-separated and relative with no ``..`` segments; iteration
    is always lexicographic by path.
    """

    def __init__(self, files: dict[str, bytes] | None = None):
        self.files: dict[str, bytes] = {}
        for path, content in (files or {}).items():
            self.add(path, content)

    def add(self, path: str, content: bytes | str) -> None:
        if not path or path.startswith("/") or "\\" in path:
            raise ValueError(f"project paths must be relative and /-separated: {path!r}")
        if any(seg in ("", ".", "..") for seg in path.split("/")):
            raise ValueError(f"project paths may not contain empty, '.' or '..' segments: {path!r}")
        if isinstance(content, str):
            content = content.encode("utf-8")
        self.files[path] = content

    def merge(self, other: "GeneratedProject") -> None:
        for path, content in other.files.items():
            self.add(path, content)

    def paths(self) -> list[str]:
        return sorted(self.files)

    def items(self) -> list[tuple[str, bytes]]:
        return [(path, self.files[path]) for path in self.paths()]

    def __len__(self) -> int:
        return len(self.files)

    def __contains__(self, path: str) -> bool:
        return path in self.files

    def write_to(self, directory: Path) -> None:
        for path, content in self.items():
            target = directory / path
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(content)

    @classmethod
    def read_from(cls, directory: Path) -> "GeneratedProject":
        project = cls()
        for file in sorted(p for p in directory.rglob("*") if p.is_file()):
            project.add(file.relative_to(directory).as_posix(), file.read_bytes())
        return project


_PLACEHOLDER_RE = re.compile(r"\{\{([a-z_]+)\}\}")


def load_template(name: str) -> str:
    """Read a packaged template; a missing asset is a generation error naming it."""
    ref = resources.files("forge").joinpath("templates", name)
    try:
        return ref.read_text(encoding="utf-8")
    except (FileNotFoundError, NotADirectoryError):
        raise GenerationError(f"missing template: {ref}") from None


def render_template(text: str, values: dict[str, str]) -> str:
    """Substitute ``{{key}}`` placeholders; unknown keys are an error."""

    def replace(match: re.Match[str]) -> str:
        key = match.group(1)
        if key not in values:
            raise GenerationError(f"template references unknown placeholder {{{{{key}}}}}")
        return values[key]

    return _PLACEHOLDER_RE.sub(replace, text)
