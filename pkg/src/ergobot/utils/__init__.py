"""Utilities for Ergobot Core."""

from ergobot.utils.config import RunConfig, get_config, load_config
from ergobot.utils.logging import get_logger, setup_logging

__all__ = ["RunConfig", "get_config", "get_logger", "load_config", "setup_logging"]
