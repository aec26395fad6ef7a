import logging
import os
import uuid
from datetime import datetime
from logging.handlers import RotatingFileHandler
from typing import Optional

from config import settings

os.makedirs(settings.LOG_DIR, exist_ok=True)

# One id per interpreter, so interleaved runs in the daily file can be told apart.
RUN_ID = uuid.uuid4().hex[:8]

LOG_FORMAT = "%(asctime)s - %(run_id)s - %(name)s - %(levelname)s - %(message)s"


class RunContextFilter(logging.Filter):
    """Stamps every record with the run id."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = RUN_ID
        return True


def setup_logger(
    module_name: str,
    log_level=logging.DEBUG,
    max_bytes: int = 5 * 1024 * 1024,  # 5 MB per log file
    backup_count: int = 5
) -> logging.Logger:
    """
    Logger with a rotating daily file (always DEBUG) and a stderr console handler
    at COULOMBKIT_LOG_LEVEL. stdout is left to reports.
    """
    logger = logging.getLogger(module_name)
    if logger.hasHandlers():
        return logger

    logger.setLevel(log_level)
    logger.propagate = False
    logger.addFilter(RunContextFilter())
    formatter = logging.Formatter(LOG_FORMAT)

    log_file_path = os.path.join(settings.LOG_DIR, datetime.now().strftime("coulombkit_%d_%m_%Y.log"))
    file_handler = RotatingFileHandler(
        log_file_path, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8"
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, settings.LOG_LEVEL, logging.WARNING))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


def run_context(threads: Optional[int] = None) -> dict:
    """Limits in force for this run; a command-line ``--threads`` wins over the environment."""
    return {
        "budget": settings.ENUMERATION_BUDGET,
        "dim_limit": settings.DIMENSION_LIMIT,
        "prescan_radius": settings.PRESCAN_RADIUS,
        "threads": settings.THREADS if threads is None else threads,
    }


def log_run_context(logger: logging.Logger, command: str, threads: Optional[int] = None) -> dict:
    context = run_context(threads)
    logger.info(f"{command} starting: " + " ".join(f"{k}={v}" for k, v in context.items()))
    return context
