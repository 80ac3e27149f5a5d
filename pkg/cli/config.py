"""
Configuration: defaults for output location, parallelism, logging and the
runtime audit, read from the environment (and `.env` when present).
"""
from __future__ import annotations
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

try:
    from dotenv import load_dotenv
    env_path = Path(__file__).parent.parent / ".env"
    if env_path.exists():
        load_dotenv(env_path)
except ImportError:
    pass

logger = logging.getLogger(__name__)

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class Config:
    output_dir: Path = Path("runs")
    jobs: int = 1
    log_level: str = "INFO"
    audit_interval: int = 10        # full distance recomputation every k*n algorithm steps
    bfs_budget: int = 1_000_000     # node budget for the brute-force swap search

    @classmethod
    def from_env(cls) -> "Config":
        def _int(env_name: str, default: int, minimum: int = 1) -> int:
            raw = os.environ.get(env_name)
            if raw is None or raw == "":
                return default
            try:
                value = int(raw)
            except ValueError:
                raise RuntimeError(f"Invalid config: {env_name}={raw!r} is not an integer") from None
            if value < minimum:
                raise RuntimeError(f"Invalid config: {env_name} must be >= {minimum}, got {value}")
            return value

        level = os.environ.get("EVOTRACK_LOG_LEVEL", "INFO").upper()
        if level not in _LOG_LEVELS:
            raise RuntimeError(f"Invalid config: EVOTRACK_LOG_LEVEL={level!r}")

        return cls(
            output_dir=Path(os.environ.get("EVOTRACK_OUTPUT_DIR", "runs")),
            jobs=_int("EVOTRACK_JOBS", 1),
            log_level=level,
            audit_interval=_int("EVOTRACK_AUDIT_INTERVAL", 10),
            bfs_budget=_int("EVOTRACK_BFS_BUDGET", 1_000_000),
        )


_config: Optional[Config] = None


def get_config() -> Config:
    global _config
    if _config is None:
        _config = Config.from_env()
    return _config


def reset_config() -> None:
    global _config
    _config = None
