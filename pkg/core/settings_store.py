"""
Centralized settings storage with optional JSON overrides.
Reads ~/.brooks_at/settings.json (or the file named by $BROOKS_AT_SETTINGS).
"""

import copy
import json
import os
import threading
from pathlib import Path
from typing import Any, Dict, Optional

from config import (
    MAX_VERTICES, CENSUS_MAX_EDGES, CENSUS_CHUNK_SIZE, POLYNOMIAL_MAX_EDGES,
    CHOOSABILITY_MAX_VERTICES, CHOOSABILITY_MAX_LIST_TOTAL, AUDIT_MAX_ASSIGNMENTS,
    PAINT_MAX_VERTICES, PIPELINE_PAINT_MAX_VERTICES, DEFAULT_TRIALS, DEFAULT_SEED,
    SETTINGS_ENV_VAR, SETTINGS_DIR_NAME, GRAY, RESET,
)


# Default settings - used when no override file exists
DEFAULT_SETTINGS = {
    "capacity": {
        "max_vertices": MAX_VERTICES,
        "census_edges": CENSUS_MAX_EDGES,
        "polynomial_edges": POLYNOMIAL_MAX_EDGES,
        "choosability_vertices": CHOOSABILITY_MAX_VERTICES,
        "choosability_list_total": CHOOSABILITY_MAX_LIST_TOTAL,
        "audit_assignments": AUDIT_MAX_ASSIGNMENTS,
        "paint_vertices": PAINT_MAX_VERTICES,
        "pipeline_paint_vertices": PIPELINE_PAINT_MAX_VERTICES,
    },
    "census": {
        "chunk_size": CENSUS_CHUNK_SIZE,
    },
    "trials": {
        "count": DEFAULT_TRIALS,
        "seed": DEFAULT_SEED,
    },
    "console": {
        "verbose": False,
    },
}


def default_settings_path() -> Path:
    """Override file location: $BROOKS_AT_SETTINGS, else ~/.brooks_at/settings.json."""
    env_path = os.environ.get(SETTINGS_ENV_VAR)
    if env_path:
        return Path(env_path)
    return Path.home() / SETTINGS_DIR_NAME / "settings.json"


class SettingsStore:
    """
    Thread-safe settings manager. Capacity-bounded operations read their
    bounds from here at call time, so overrides take effect immediately.
    """

    def __init__(self, settings_file: Optional[Path] = None):
        self._lock = threading.RLock()
        self._settings: Dict[str, Any] = {}
        self._settings_file = Path(settings_file) if settings_file else default_settings_path()

        self._load()

    def _load(self):
        """Load overrides from disk if present; never creates the file."""
        with self._lock:
            self._settings = copy.deepcopy(DEFAULT_SETTINGS)
            if not self._settings_file.exists():
                return
            try:
                with open(self._settings_file, 'r', encoding='utf-8') as f:
                    loaded = json.load(f)
                # Merge with defaults so partial files stay valid
                self._settings = self._deep_merge(self._settings, loaded)
            except (json.JSONDecodeError, IOError) as e:
                print(f"{GRAY}[Settings] Error loading {self._settings_file}: {e}. Using defaults.{RESET}")

    def load_file(self, path) -> None:
        """Merge an explicit override file (CLI --settings)."""
        with open(path, 'r', encoding='utf-8') as f:
            loaded = json.load(f)
        with self._lock:
            self._settings = self._deep_merge(self._settings, loaded)

    def save(self, path=None):
        """Persist current settings to disk."""
        target = Path(path) if path else self._settings_file
        with self._lock:
            try:
                target.parent.mkdir(parents=True, exist_ok=True)
                with open(target, 'w', encoding='utf-8') as f:
                    json.dump(self._settings, f, indent=2, sort_keys=True)
            except IOError as e:
                print(f"{GRAY}[Settings] Error saving settings: {e}{RESET}")

    def _deep_merge(self, base: dict, override: dict) -> dict:
        """Recursively merge override into base."""
        result = copy.deepcopy(base)
        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = value
        return result

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get a setting by dot-notation path.
        Example: get("capacity.census_edges") returns the census edge bound.
        """
        with self._lock:
            value = self._settings
            try:
                for k in key_path.split('.'):
                    value = value[k]
                return value
            except (KeyError, TypeError):
                return default

    def set(self, key_path: str, value: Any):
        """Set a setting by dot-notation path (in memory; call save() to persist)."""
        with self._lock:
            keys = key_path.split('.')
            target = self._settings
            for k in keys[:-1]:
                if k not in target:
                    target[k] = {}
                target = target[k]
            target[keys[-1]] = value

    def get_all(self) -> Dict[str, Any]:
        """Return a copy of all settings."""
        with self._lock:
            return copy.deepcopy(self._settings)

    def reset_to_defaults(self):
        """Reset all settings to defaults."""
        with self._lock:
            self._settings = copy.deepcopy(DEFAULT_SETTINGS)

    def restore(self, snapshot: Dict[str, Any]):
        """Replace all settings with a copy taken from get_all()."""
        with self._lock:
            self._settings = copy.deepcopy(snapshot)


# Global singleton instance
settings = SettingsStore()
