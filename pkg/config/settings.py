import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

PROJECT_ROOT = Path(__file__).resolve().parents[1]

TOOLKIT_VERSION = "0.1.0"

# Embedded in every report so consumers never guess the normalization.
CONVENTIONS = {"lattice": "own", "grading": "2Delta"}


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}")


ENUMERATION_BUDGET = _int_from_env("COULOMBKIT_BUDGET", 1_000_000)
DIMENSION_LIMIT = _int_from_env("COULOMBKIT_DIM_LIMIT", 10)
PRESCAN_RADIUS = _int_from_env("COULOMBKIT_PRESCAN_RADIUS", 1)
THREADS = _int_from_env("COULOMBKIT_THREADS", 1)

ARCHIVE_URL = os.getenv(
    "COULOMBKIT_ARCHIVE_URL",
    f"sqlite:///{PROJECT_ROOT / 'reports' / 'archive.db'}",
)

LOG_DIR = os.getenv("COULOMBKIT_LOG_DIR", str(PROJECT_ROOT / "logs"))
LOG_LEVEL = os.getenv("COULOMBKIT_LOG_LEVEL", "WARNING").upper()

if ENUMERATION_BUDGET <= 0 or DIMENSION_LIMIT < 0 or THREADS <= 0:
    raise RuntimeError("COULOMBKIT_BUDGET and COULOMBKIT_THREADS must be positive")
