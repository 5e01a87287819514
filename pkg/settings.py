"""Lazy-loaded settings read from the environment (and .env) on first use."""

import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

_settings = None


@dataclass(frozen=True)
class Settings:
    precision: int
    fuel: Optional[int]
    max_chain_degree: int
    log_level: str


def _read_int(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}.")
    if value < minimum:
        raise RuntimeError(f"{name} must be at least {minimum}, got {value}.")
    return value


def _read_fuel() -> Optional[int]:
    """QOLAB_FUEL: a nonnegative integer, or 'auto' for the total degree of the input."""
    raw = os.environ.get("QOLAB_FUEL", "auto").strip().lower()
    if raw in ("", "auto"):
        return None
    return _read_int("QOLAB_FUEL", 0, 0)


def _read_log_level() -> str:
    level = (os.environ.get("QOLAB_LOG_LEVEL", "").strip() or "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        raise RuntimeError(f"QOLAB_LOG_LEVEL must be a logging level name such as DEBUG or WARNING, got {level!r}.")
    return level


def get_settings() -> Settings:
    """Get the process settings (singleton)."""
    global _settings
    if _settings is None:
        load_dotenv()
        _settings = Settings(
            precision=_read_int("QOLAB_PRECISION", 12, 0),
            fuel=_read_fuel(),
            max_chain_degree=_read_int("QOLAB_MAX_CHAIN_DEGREE", 256, 1),
            log_level=_read_log_level(),
        )
    return _settings


def reset_settings() -> None:
    global _settings
    _settings = None
