"""Helper utilities."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any


def ensure_dir_exists(path: Path) -> Path:
    """Ensure a directory exists, create if not."""
    path.mkdir(parents=True, exist_ok=True)
    return path


def get_resource_path(relative_path: str) -> Path:
    """Get absolute path to resource."""
    base_path = Path(__file__).parent.parent.parent
    return base_path / "resources" / relative_path


def canonical_json(data: Any) -> str:
    """Serialize with sorted keys and no whitespace (stable across runs)."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def stable_hash(data: Any, length: int = 16) -> str:
    """SHA-256 of the canonical JSON form, truncated to ``length`` hex digits."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()[:length]


def format_summary_line(**fields: Any) -> str:
    """Render ``key=value`` pairs in call order (floats with 6 decimals)."""
    parts = []
    for key, value in fields.items():
        if isinstance(value, float):
            value = f"{value:.6f}"
        parts.append(f"{key}={value}")
    return " ".join(parts)
