"""Tests for Ergobot Core."""
