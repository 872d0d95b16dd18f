"""CLI for Ergobot Core."""

from .main import cli

__all__ = ["cli"]
