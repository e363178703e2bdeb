import logging
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from mrclab.lib.errors import ConfigError

load_dotenv()

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    prime: int
    seed: int
    trials: int
    output_dir: Path
    log_level: str


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None


def _env_level(name: str, default: str) -> str:
    level = os.getenv(name, default).strip().upper() or default
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"{name} must be a logging level name, got {level!r}")
    return level


def get_settings() -> Settings:
    """Defaults for the CLI and the batch jobs, read from the environment / .env."""
    return Settings(
        prime=_env_int("MRCLAB_PRIME", 32003),
        seed=_env_int("MRCLAB_SEED", 0),
        trials=_env_int("MRCLAB_TRIALS", 3),
        output_dir=Path(os.getenv("MRCLAB_OUTPUT_DIR", "reports")),
        log_level=_env_level("MRCLAB_LOG_LEVEL", "INFO"),
    )
