"""Unit tests for logging setup."""

import logging
import os
from logging.handlers import RotatingFileHandler
from unittest.mock import patch

import pytest

from HypHarm.utils.logging import setup_logging


@pytest.fixture
def restore_root_logger():
    """Undo handler and level changes made by setup_logging."""
    root = logging.getLogger()
    handlers = list(root.handlers)
    level = root.level
    yield root
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
            root.removeHandler(handler)
    root.setLevel(level)


class TestSetupLogging:
    """Test cases for setup_logging."""

    def test_disabled_without_debug(self, restore_root_logger):
        """Test that nothing is logged unless HYPHARM_DEBUG=1."""
        with patch.dict(os.environ, {}, clear=True):
            assert setup_logging() is None
        assert restore_root_logger.level == logging.CRITICAL

    def test_debug_writes_rotating_file(self, restore_root_logger, tmp_path):
        """Test that debug mode logs to HypHarm.log in HYPHARM_LOG_DIR."""
        log_dir = tmp_path / "logs"
        with patch.dict(
            os.environ, {"HYPHARM_DEBUG": "1", "HYPHARM_LOG_DIR": str(log_dir)}
        ):
            log_file = setup_logging()

        assert log_file == log_dir / "HypHarm.log"
        handlers = [
            h
            for h in restore_root_logger.handlers
            if isinstance(h, RotatingFileHandler)
        ]
        assert handlers
        assert handlers[-1].maxBytes == 20 * 1024 * 1024
        assert handlers[-1].backupCount == 2

        logging.getLogger("HypHarm.test").debug("series converged")
        handlers[-1].flush()
        assert "HypHarm.test - DEBUG" in log_file.read_text()
