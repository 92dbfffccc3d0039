"""
Configuration Service.

Manages run settings: shipped defaults deep-merged with an optional
user JSON file. Implements the Singleton pattern.
"""

from __future__ import annotations

import copy
import json
from pathlib import Path
from typing import Any

from PySide6.QtCore import Signal

from src.core.exceptions import ConfigurationError
from src.models.run_config import RunConfig
from src.services.base import BaseService
from src.utils.helpers import get_resource_path

DEFAULTS_PATH = "config/default_settings.json"


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Recursively merge ``override`` into a copy of ``base``."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class ConfigService(BaseService):
    """
    Singleton Configuration Service.

    Manages settings with:
    - Shipped defaults (resources/config/default_settings.json)
    - Optional user file merged on top (``load``)
    - Dot notation for nested keys
    - Change notifications via signals

    Usage:
        config = ConfigService()
        config.load(Path("experiment.json"))

        # Get a value
        mu = config.get("algorithm.mu", 100)

        # Build the immutable run configuration
        run_config = config.build_run_config({"seed": 3})
    """

    # Signals
    settings_changed = Signal(str, object)  # key, value
    settings_loaded = Signal()
    settings_saved = Signal()

    def _on_init(self) -> None:
        """Initialize the configuration service."""
        self._defaults = self._read(get_resource_path(DEFAULTS_PATH))
        self._settings: dict[str, Any] = copy.deepcopy(self._defaults)
        self._source: Path | None = None

    @staticmethod
    def _read(path: Path) -> dict[str, Any]:
        """Read a JSON object from disk."""
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise ConfigurationError(f"Configuration file not found: {path}", key=str(path))
        except json.JSONDecodeError as e:
            raise ConfigurationError(
                f"Configuration file {path} is not valid JSON (line {e.lineno}): {e.msg}",
                key=str(path),
            )
        except OSError as e:
            raise ConfigurationError(f"Cannot read configuration file {path}: {e}", key=str(path))
        if not isinstance(data, dict):
            raise ConfigurationError(f"Configuration file {path} must hold a JSON object", key=str(path))
        return data

    def load(self, path: Path | None) -> None:
        """
        Reset to defaults and merge a user configuration file.

        Args:
            path: User JSON file; None keeps the defaults

        Raises:
            ConfigurationError: If the file is missing or malformed
        """
        settings = copy.deepcopy(self._defaults)
        if path is not None:
            settings = deep_merge(settings, self._read(Path(path)))
        self._settings = settings
        self._source = Path(path) if path is not None else None
        self.settings_loaded.emit()

    def save(self, path: Path) -> None:
        """Write the effective settings as JSON."""
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(self._settings, f, indent=2, ensure_ascii=False, sort_keys=True)
                f.write("\n")
            self.settings_saved.emit()
        except OSError as e:
            raise IOError(f"Failed to save settings to {path}: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a setting value using dot notation.

        Args:
            key: Setting key (e.g., "algorithm.mu" or "env.gripper.max_opening")
            default: Default value if key not found

        Returns:
            The setting value or default
        """
        keys = key.split(".")
        value = self._settings

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """
        Set a setting value using dot notation.

        Args:
            key: Setting key (e.g., "run.seed")
            value: Value to set
        """
        keys = key.split(".")
        target = self._settings

        # Navigate to parent
        for k in keys[:-1]:
            if k not in target or not isinstance(target[k], dict):
                target[k] = {}
            target = target[k]

        target[keys[-1]] = value
        self.settings_changed.emit(key, value)

    def has(self, key: str) -> bool:
        """
        Check if a setting key exists.

        Args:
            key: Setting key to check

        Returns:
            True if key exists, False otherwise
        """
        return self.get(key) is not None

    def remove(self, key: str) -> bool:
        """
        Remove a setting.

        Args:
            key: Setting key to remove

        Returns:
            True if removed, False if not found
        """
        keys = key.split(".")
        target = self._settings

        for k in keys[:-1]:
            if not isinstance(target.get(k), dict):
                return False
            target = target[k]

        if keys[-1] in target:
            del target[keys[-1]]
            return True

        return False

    def get_all(self) -> dict[str, Any]:
        """
        Get all settings.

        Returns:
            Deep copy of all settings
        """
        return copy.deepcopy(self._settings)

    def build_run_config(self, overrides: dict[str, Any] | None = None) -> RunConfig:
        """
        Immutable run configuration from the current settings.

        Args:
            overrides: Flat run-level overrides (strategy, seed, budget,
                workers); the loaded document is left untouched

        Raises:
            ConfigurationError: If a value has the wrong type
        """
        run = self.get("run", {})
        flat: dict[str, Any] = {
            **self.get("algorithm", {}),
            "strategy": run.get("strategy", "e2r"),
            "seed": run.get("seed", 1),
            "budget": run.get("budget", 20000),
            "workers": run.get("workers", 1),
            "audit_success_archive": run.get("audit_success_archive", True),
            "record_wall_time": run.get("record_wall_time", False),
            "mutation": self.get("mutation", {}),
            "env": self.get("env", {}),
            "metrics": self.get("metrics", {}),
        }
        flat.update({k: v for k, v in (overrides or {}).items() if v is not None})
        try:
            return RunConfig.from_dict(flat)
        except (TypeError, ValueError, KeyError) as e:
            raise ConfigurationError(f"Invalid configuration value: {e}", key=str(self._source or DEFAULTS_PATH))

    def snapshot(self, overrides: dict[str, Any] | None = None) -> dict[str, Any]:
        """Effective configuration: settings with run overrides applied."""
        data = self.get_all()
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            section = "run" if key in ("strategy", "seed", "budget", "workers") else "algorithm"
            data.setdefault(section, {})[key] = value.value if hasattr(value, "value") else value
        return data

    @property
    def source(self) -> Path | None:
        """User file the settings were loaded from."""
        return self._source
