"""Integration tests for Ergobot Core."""
