from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Runtime defaults, overridable from the environment or a .env file."""

    PROJECT_NAME: str = "qdcss"

    # Storage
    OUTPUT_DIR: Path = Path("output")
    CACHE_DIR: Path = Path(".qdcss_cache")
    CACHE_ENABLED: bool = True
    CACHE_TTL_DAYS: int = 30

    LOG_LEVEL: str = "INFO"
    DEFAULT_SEED: int = 2024

    # Decoder
    BP_MAX_ITERATIONS: int = Field(default=100, ge=1)
    BP_NORMALIZATION: float = Field(default=0.75, gt=0.0, le=1.0)
    LLR_CLIP: float = Field(default=50.0, gt=0.0)

    # Monte-Carlo
    TARGET_ERRORS: int = 100
    MAX_TRIALS: int = 1_000_000
    SIM_ACCOUNTING: Literal["component", "joint"] = "component"
    BATCH_SIZE: int = 256
    WORKERS: int = 4

    # Support search
    HEURISTIC_MAX_ATTEMPTS: int = 200
    HEURISTIC_LOCAL_THRESHOLD: int = 50

    # Distance search
    EXHAUSTIVE_CANDIDATE_LIMIT: int = 10**9
    SPLIT_TABLE_LIMIT: int = 5_000_000
    ISD_ITERATIONS: int = 10_000

    CYCLE_CAP: int = 8

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": True,
        "extra": "allow",
    }


settings = Settings()
