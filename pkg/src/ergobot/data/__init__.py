"""Packaged experiment definitions."""
