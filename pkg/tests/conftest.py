"""Shared fixtures."""

import os
from unittest.mock import patch

import pytest

from HypHarm.config import config


@pytest.fixture(autouse=True)
def isolated_config(tmp_path):
    """Point the global config at an empty file so user settings never leak in."""
    config_file = tmp_path / "HypHarm.yaml"
    config_file.write_text("")
    with patch.dict(os.environ, {"HYPHARM_CONFIG": str(config_file)}):
        config.reload()
        yield config_file
    config.reload()
