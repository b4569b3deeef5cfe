"""Configuration management for pinchlab."""

import os
from typing import Any

from dotenv import load_dotenv

load_dotenv()


def load_config() -> dict[str, Any]:
    """Load configuration from environment variables."""
    return {
        # Simplex budget for order-complex enumeration
        "budget": int(os.environ.get("PINCHLAB_BUDGET", 10_000_000)),
        "root_tol": float(os.environ.get("PINCHLAB_ROOT_TOL", "1e-6")),
        "seed": int(os.environ.get("PINCHLAB_SEED", 0)),
        "profile_path": os.environ.get("PINCHLAB_PROFILE", None),
        "log_level": os.environ.get("PINCHLAB_LOG_LEVEL", "WARNING").upper(),
        "workers": int(os.environ.get("PINCHLAB_WORKERS", 4)),  # verify-all concurrency
    }


# Global config instance
CONFIG = load_config()
