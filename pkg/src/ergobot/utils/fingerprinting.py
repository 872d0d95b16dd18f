"""Fingerprinting utilities for reproducible outputs."""

import hashlib
import json
from pathlib import Path
from typing import Any


def canonical_json(data: Any) -> str:
    """Serialize data with sorted keys and compact separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def generate_fingerprint(data: Any) -> str:
    """Generate a SHA-256 fingerprint of a JSON-serializable structure."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def file_fingerprint(path: str | Path, chunk_size: int = 65536) -> str:
    """Generate a SHA-256 fingerprint of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(chunk_size), b""):
            digest.update(chunk)
    return digest.hexdigest()

