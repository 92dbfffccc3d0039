"""
Base repository implementations.

Provides the abstract repository interface and a line-delimited JSON
implementation with a self-describing header line.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Generic, Iterable, Type, TypeVar

from src.core.exceptions import IncompatibleArtifactError, RepositoryError, ValidationError
from src.models.base import BaseModel

T = TypeVar("T", bound=BaseModel)


class BaseRepository(ABC, Generic[T]):
    """
    Abstract base repository.

    Artifacts are written once and read back whole, so the interface
    is reduced to bulk operations.

    Type Parameters:
        T: The model type this repository manages
    """

    @abstractmethod
    def write_all(self, entities: Iterable[T], meta: dict[str, Any] | None = None) -> int:
        """Replace the stored entities; returns the record count."""
        pass

    @abstractmethod
    def read_all(self) -> list[T]:
        """Read every stored entity."""
        pass

    @abstractmethod
    def read_header(self) -> dict[str, Any]:
        """Read the artifact header."""
        pass


def _dumps(record: dict[str, Any]) -> str:
    """One JSON line; floats use shortest round-trip repr."""
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(",", ":"), allow_nan=False)


class JsonLinesRepository(BaseRepository[T]):
    """
    Line-delimited JSON repository.

    Line 1 is a header object ``{"format": ..., "version": ..., **meta}``;
    every following line is one record. Records are written with sorted
    keys so equal inputs give byte-identical files.

    Usage:
        repo = JsonLinesRepository(Path("out.jsonl"), Individual, "grasp-repertoire", 1)
        repo.write_all(individuals, meta={"config_hash": "..."})
        header = repo.read_header()
        individuals = repo.read_all()
    """

    def __init__(
        self,
        file_path: Path,
        model_class: Type[T],
        format_name: str,
        version: int,
    ) -> None:
        """
        Initialize the repository.

        Args:
            file_path: Path to the JSONL file
            model_class: The model class for deserialization
            format_name: Value of the header ``format`` field
            version: Supported format version
        """
        self._file_path = Path(file_path)
        self._model_class = model_class
        self._format = format_name
        self._version = version

    def write_all(self, entities: Iterable[T], meta: dict[str, Any] | None = None) -> int:
        """
        Write the header and one line per entity.

        Raises:
            RepositoryError: On I/O failure or a non-finite value
        """
        header = {"format": self._format, "version": self._version, **(meta or {})}
        try:
            lines = [_dumps(header)] + [_dumps(entity.to_dict()) for entity in entities]
        except ValueError as e:
            raise RepositoryError(f"Cannot encode record: {e}", path=str(self._file_path))
        try:
            self._file_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self._file_path, "w", encoding="utf-8", newline="\n") as f:
                f.write("\n".join(lines) + "\n")
        except OSError as e:
            raise RepositoryError(f"Failed to write {self._file_path}: {e}", path=str(self._file_path))
        return len(lines) - 1

    def _lines(self) -> list[str]:
        try:
            with open(self._file_path, "r", encoding="utf-8") as f:
                return f.read().splitlines()
        except OSError as e:
            raise RepositoryError(f"Failed to read {self._file_path}: {e}", path=str(self._file_path))

    def _parse(self, line: str, number: int) -> dict[str, Any]:
        try:
            data = json.loads(line, parse_constant=lambda name: math.nan)
        except json.JSONDecodeError as e:
            raise RepositoryError(
                f"{self._file_path}:{number}: malformed record ({e.msg})",
                path=str(self._file_path),
                line_number=number,
            )
        if not isinstance(data, dict):
            raise RepositoryError(
                f"{self._file_path}:{number}: record is not an object",
                path=str(self._file_path),
                line_number=number,
            )
        return data

    def read_header(self) -> dict[str, Any]:
        """
        Parse and check the header line.

        Raises:
            RepositoryError: If the file is empty or the header is malformed
            IncompatibleArtifactError: If format or version differ
        """
        lines = self._lines()
        if not lines:
            raise RepositoryError(f"{self._file_path}: empty file, header missing", path=str(self._file_path), line_number=1)
        header = self._parse(lines[0], 1)
        if header.get("format") != self._format:
            raise IncompatibleArtifactError(
                f"{self._file_path}: not a {self._format} file",
                path=str(self._file_path),
                expected=self._format,
                found=str(header.get("format")),
            )
        if header.get("version") != self._version:
            raise IncompatibleArtifactError(
                f"{self._file_path}: format version {header.get('version')} is not supported "
                f"(expected {self._version})",
                path=str(self._file_path),
                expected=str(self._version),
                found=str(header.get("version")),
            )
        return header

    def read_all(self) -> list[T]:
        """
        Read every record after the header.

        Raises:
            RepositoryError: With the line number of the first bad record
        """
        self.read_header()
        entities = []
        for number, line in enumerate(self._lines()[1:], start=2):
            if not line.strip():
                continue
            data = self._parse(line, number)
            try:
                entities.append(self._model_class.from_dict(data))
            except (KeyError, TypeError, ValueError, IndexError, ValidationError) as e:
                raise RepositoryError(
                    f"{self._file_path}:{number}: invalid {self._model_class.__name__} record ({e})",
                    path=str(self._file_path),
                    line_number=number,
                )
        return entities

    def count(self) -> int:
        """Number of records (header excluded)."""
        return sum(1 for line in self._lines()[1:] if line.strip())

    @property
    def file_path(self) -> Path:
        """Get the file path."""
        return self._file_path
