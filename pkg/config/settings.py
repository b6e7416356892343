from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

DEFAULTS_PATH = Path(__file__).resolve().parent.parent / "config_store" / "defaults.json"

_ENV_OVERRIDES = {
    "LPC_WORK_BUDGET": "work_budget",
    "LPC_SAMPLE_SEED": "sample_seed",
    "LPC_VERIFY_WORKERS": "verify_workers",
    "LPC_VERBOSE": "verbose",
}


class SettingsError(ValueError):
    pass


@dataclass(frozen=True)
class Settings:
    work_budget: int = 10**8
    min_distance_budget: int = 20000
    sample_trials: int = 1000
    sample_seed: int = 0
    sim_decay: float = 0.9
    matching_max_left_bits: int = 14
    matching_max_right_bits: int = 24
    brute_force_error_search_limit: int = 5000
    partition_fallbacks: int = 12
    verify_workers: int = 1
    verbose: bool = False


def _coerce(name: str, raw: Any) -> Any:
    kind = {f.name: f.type for f in fields(Settings)}[name]
    if kind in ("bool", bool):
        if isinstance(raw, str):
            return raw.strip().lower() in ("1", "true", "yes", "on")
        return bool(raw)
    if kind in ("float", float):
        return float(raw)
    return int(raw)


def load_settings(path: Optional[str | Path] = None, env: Optional[Dict[str, str]] = None) -> Settings:
    """Read the defaults file, then apply LPC_* environment overrides."""
    p = Path(path) if path is not None else DEFAULTS_PATH
    values: Dict[str, Any] = {}
    if p.exists():
        try:
            # utf-8-sig tolerates a BOM left by editors
            values = json.loads(p.read_text(encoding="utf-8-sig"))
        except json.JSONDecodeError as exc:
            raise SettingsError(f"Settings file is not valid JSON: {p}: {exc}") from exc
    known = {f.name for f in fields(Settings)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise SettingsError(f"Unknown settings keys in {p}: {', '.join(unknown)}")

    settings = Settings(**{k: _coerce(k, v) for k, v in values.items()})
    environ = os.environ if env is None else env
    overrides = {
        attr: _coerce(attr, environ[var]) for var, attr in _ENV_OVERRIDES.items() if var in environ
    }
    if overrides:
        settings = replace(settings, **overrides)
    if settings.work_budget <= 0:
        raise SettingsError("work_budget must be positive")
    if not 0.0 < settings.sim_decay < 1.0:
        raise SettingsError("sim_decay must lie in (0, 1)")
    return settings


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()


def log(tag: str, message: str) -> None:
    if get_settings().verbose:
        print(f"[{tag}] {message}", file=sys.stderr)


__all__ = ["Settings", "SettingsError", "load_settings", "get_settings", "log"]
