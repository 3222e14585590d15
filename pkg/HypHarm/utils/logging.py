"""Logging configuration for HypHarm."""

import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path


def setup_logging():
    """Configure file logging when debug mode is active.

    Debug mode is HYPHARM_DEBUG=1. Logs go to $HYPHARM_LOG_DIR/HypHarm.log
    (default ./logs). Standard output stays reserved for reports.

    Returns:
        Path: Path to the log file, or None if logging is disabled
    """
    if os.environ.get("HYPHARM_DEBUG") != "1":
        logging.getLogger().setLevel(logging.CRITICAL)
        return None

    log_dir = Path(os.environ.get("HYPHARM_LOG_DIR", "./logs"))
    log_dir.mkdir(parents=True, exist_ok=True)
    log_file = log_dir / "HypHarm.log"

    file_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(threadName)s - %(message)s"
    )

    # 20MB with 2 backup files
    file_handler = RotatingFileHandler(
        log_file, maxBytes=20 * 1024 * 1024, backupCount=2
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(file_formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    root_logger.addHandler(file_handler)

    return log_file
