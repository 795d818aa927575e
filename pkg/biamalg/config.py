"""
Process-wide settings.

Values come from keyword defaults, then the environment
(``BIAMALG_MAX_ORDER``, ``BIAMALG_WORKERS``), then ``configure(...)``.
"""
import logging
import os
import threading
from dataclasses import dataclass, replace
from typing import Optional

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    max_order: int = 4096  # global cap on the order of any constructed ring
    table_cap: int = 4096  # operation tables are cached up to this order
    poly_degree_bound: int = 3
    content_oracle_budget: int = 2_000_000  # (P, g) pairs per ring for the content oracle
    workers: int = 1  # harness thread pool size

    @classmethod
    def from_env(cls) -> "Settings":
        settings = cls()
        overrides = {}
        for field_name, var in (("max_order", "BIAMALG_MAX_ORDER"), ("workers", "BIAMALG_WORKERS")):
            raw = os.environ.get(var)
            if raw is None:
                continue
            try:
                value = int(raw)
            except ValueError:
                logger.error(f"Ignoring {var}={raw!r}: not an integer")
                continue
            if value < 1:
                logger.error(f"Ignoring {var}={raw!r}: must be positive")
                continue
            overrides[field_name] = value
        return replace(settings, **overrides)


_lock = threading.Lock()
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    with _lock:
        if _settings is None:
            _settings = Settings.from_env()
        return _settings


def configure(**overrides) -> Settings:
    """Replace selected settings for the whole process and return the result"""
    global _settings
    current = get_settings()
    updated = replace(current, **overrides)
    with _lock:
        _settings = updated
    return updated


def reset_settings() -> None:
    """Forget overrides; the environment is read again on next access"""
    global _settings
    with _lock:
        _settings = None
