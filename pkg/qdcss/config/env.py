import os
from typing import Dict

from dotenv import load_dotenv

OVERRIDABLE = (
    "OUTPUT_DIR",
    "CACHE_DIR",
    "CACHE_ENABLED",
    "LOG_LEVEL",
    "DEFAULT_SEED",
    "WORKERS",
    "BATCH_SIZE",
)


def load_environment() -> Dict[str, str]:
    """Load variables from a .env file and return the recognised overrides that are set."""
    load_dotenv()
    return {name: os.environ[name] for name in OVERRIDABLE if name in os.environ}
