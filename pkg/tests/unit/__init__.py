"""Unit tests for Ergobot Core."""
