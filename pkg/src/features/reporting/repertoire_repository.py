"""
Repertoire files.

A repertoire is the success archive of a run written as line-delimited
JSON. The header line records the environment it was produced under so
that replays can refuse a different one.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, NamedTuple

from src.core.exceptions import IncompatibleArtifactError, RepositoryError
from src.models.archives import SuccessArchive
from src.models.individual import Individual
from src.models.repositories.base import JsonLinesRepository
from src.models.run_config import EnvConfig

REPERTOIRE_FORMAT = "grasp-repertoire"
REPERTOIRE_VERSION = 1


class Repertoire(NamedTuple):
    """Contents of a repertoire file."""

    archive: SuccessArchive
    env: EnvConfig
    env_hash: str
    config_hash: str | None


class RepertoireRepository(JsonLinesRepository[Individual]):
    """
    Success archive stored as JSONL.

    Usage:
        repo = RepertoireRepository(out_dir / "repertoire.jsonl")
        repo.save(archive, env_config, config_hash=cfg.config_hash())
        repertoire = repo.load()
    """

    def __init__(self, file_path: Path) -> None:
        super().__init__(file_path, Individual, REPERTOIRE_FORMAT, REPERTOIRE_VERSION)

    def save(self, archive: SuccessArchive, env: EnvConfig, config_hash: str | None = None) -> int:
        """Write the header and one record per archive entry, in archive order."""
        meta: dict[str, Any] = {"env": env.to_dict(), "env_hash": env.env_hash()}
        if config_hash is not None:
            meta["config_hash"] = config_hash
        return self.write_all(archive, meta=meta)

    def load(self) -> Repertoire:
        """
        Read the whole file.

        Raises:
            RepositoryError: On a malformed line (with its number)
            IncompatibleArtifactError: On a format/version mismatch or a
                header whose environment does not match its own hash
        """
        header = self.read_header()
        try:
            env = EnvConfig.from_dict(header["env"])
        except (KeyError, TypeError, ValueError) as e:
            raise RepositoryError(f"{self.file_path}:1: invalid environment in header ({e})", path=str(self.file_path), line_number=1)
        stored = str(header.get("env_hash", ""))
        if env.env_hash() != stored:
            raise IncompatibleArtifactError(
                f"{self.file_path}: header environment does not match its hash",
                path=str(self.file_path),
                expected=env.env_hash(),
                found=stored,
            )
        return Repertoire(SuccessArchive(self.read_all()), env, stored, header.get("config_hash"))


def write_repertoire(
    archive: SuccessArchive,
    path: Path,
    env: EnvConfig,
    config_hash: str | None = None,
) -> int:
    """Write a success archive; returns the number of records."""
    return RepertoireRepository(Path(path)).save(archive, env, config_hash)


def read_repertoire(path: Path) -> SuccessArchive:
    """Read back the success archive of a repertoire file."""
    return RepertoireRepository(Path(path)).load().archive


def load_repertoire(path: Path) -> Repertoire:
    """Read a repertoire file with its header information."""
    return RepertoireRepository(Path(path)).load()


def require_environment(repertoire: Repertoire, env: EnvConfig, path: Path | str = "") -> None:
    """
    Refuse an environment other than the repertoire's.

    Raises:
        IncompatibleArtifactError: If the environment hashes differ
    """
    if env.env_hash() != repertoire.env_hash:
        raise IncompatibleArtifactError(
            f"Repertoire {path} was produced under environment {repertoire.env_hash}, "
            f"refusing to replay it under {env.env_hash()}",
            path=str(path),
            expected=repertoire.env_hash,
            found=env.env_hash(),
        )
