import json
import logging
import os
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from src.core.errors import ConfigError

logger = logging.getLogger(__name__)

SETTINGS_FILE = Path(__file__).resolve().parent.parent / "settings.json"


@dataclass(frozen=True)
class Settings:
    workers: int = 0  # 0 means one worker per available core
    seed: int = 1
    sample_size: int = 300
    tolerance: float = 1e-9
    enumeration_budget: int = 10_000_000
    patterson_exhaustive_max_n: int = 14
    two_alphabet_max_n: int = 12
    crosscheck_stride: int = 100

    def resolved_workers(self, requested: Optional[int] = None) -> int:
        workers = self.workers if requested is None else requested
        return workers if workers > 0 else (os.cpu_count() or 1)


_ENV_OVERRIDES = {
    "HOMOMETRY_WORKERS": "workers",
    "HOMOMETRY_SEED": "seed",
}


def _coerce(name: str, value, expected: type):
    if expected is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        try:
            return expected(value)
        except ValueError:
            raise ConfigError(f"Setting {name!r} expects {expected.__name__}, got {value!r}")
    if not isinstance(value, expected) or isinstance(value, bool):
        raise ConfigError(f"Setting {name!r} expects {expected.__name__}, got {value!r}")
    return value


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """Read settings.json, then apply HOMOMETRY_* environment overrides."""
    path = Path(path or os.environ.get("HOMOMETRY_SETTINGS") or SETTINGS_FILE)
    data = {}
    if path.exists():
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise ConfigError(f"Malformed settings file {path}: {e}")
        if not isinstance(data, dict):
            raise ConfigError(f"Settings file {path} must hold a JSON object")
    else:
        logger.debug("No settings file at %s, using defaults", path)

    for env_name, key in _ENV_OVERRIDES.items():
        if env_name in os.environ:
            data[key] = os.environ[env_name]

    types = {f.name: f.type for f in fields(Settings)}
    values = {}
    for key, value in data.items():
        if key not in types:
            logger.warning("Ignoring unknown setting %r in %s", key, path)
            continue
        values[key] = _coerce(key, value, types[key])
    return replace(Settings(), **values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
