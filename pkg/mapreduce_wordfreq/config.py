import os
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigError

DEFAULT_WORKERS = 1
DEFAULT_BLOCK_SIZE = 256
DEFAULT_EXCHANGE_TIMEOUT = 30.0  # seconds a worker waits for a peer's frame
DEFAULT_PARTITION = "global"
DEFAULT_LOG_LEVEL = "WARNING"

DEFAULT_TOP = 25
DEFAULT_DISTINCT = 25
DEFAULT_REPEAT = 3
DEFAULT_BENCH_SIZE = 1_000_000

TEXT_EXTENSIONS = (".txt", ".text")
RELATIVE_TOLERANCE = 1e-12


class Settings(BaseModel):
    workers: int = Field(DEFAULT_WORKERS, ge=1)
    block_size: int = Field(DEFAULT_BLOCK_SIZE, ge=1)
    exchange_timeout: float = Field(DEFAULT_EXCHANGE_TIMEOUT, gt=0)
    partition: Literal["global", "local"] = DEFAULT_PARTITION
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = DEFAULT_LOG_LEVEL

    model_config = ConfigDict(extra="forbid")


def load_settings() -> Settings:
    """Read settings from the environment, after loading a .env file if present."""
    load_dotenv()
    raw = {
        "workers": os.getenv("WORDFREQ_WORKERS", DEFAULT_WORKERS),
        "block_size": os.getenv("WORDFREQ_BLOCK_SIZE", DEFAULT_BLOCK_SIZE),
        "exchange_timeout": os.getenv("WORDFREQ_EXCHANGE_TIMEOUT", DEFAULT_EXCHANGE_TIMEOUT),
        "partition": os.getenv("WORDFREQ_PARTITION", DEFAULT_PARTITION),
        "log_level": os.getenv("WORDFREQ_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
    }
    try:
        return Settings(**raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise ConfigError(f"invalid setting {field}: {first['msg']}") from exc
