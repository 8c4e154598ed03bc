"""Optional on-disk result cache, enabled by POLYCAY_CACHE_DIR."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile


def cache_dir():
    return os.environ.get("POLYCAY_CACHE_DIR") or None


def cache_key(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def cache_get(key: str):
    base = cache_dir()
    if not base:
        return None
    path = os.path.join(base, f"{key}.json")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


def cache_put(key: str, doc) -> None:
    base = cache_dir()
    if not base:
        return
    os.makedirs(base, exist_ok=True)
    path = os.path.join(base, f"{key}.json")
    fd, tmp = tempfile.mkstemp(dir=base, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
