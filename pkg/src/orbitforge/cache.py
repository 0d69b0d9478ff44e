"""Content-addressed JSON cache for generated equation sets.

Keys hash the package version, the monomial order and a normalized
description of the request, never the raw argv, so flag order does not
matter. Writes go through a temp file and an atomic rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .polyalg import MONOMIAL_ORDER

ENV_VAR = "ORBITFORGE_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "orbitforge"


def cache_key(config: dict[str, Any]) -> str:
    blob = json.dumps(
        {"version": __version__, "monomial_order": MONOMIAL_ORDER, "config": config},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory: str | Path | None = None, enabled: bool = True):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def get(self, config: dict[str, Any]) -> Any | None:
        if not self.enabled:
            return None
        path = self._path(cache_key(config))
        try:
            with open(path) as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            return None
        if entry.get("config") != config:
            return None
        return entry["payload"]

    def put(self, config: dict[str, Any], payload: Any) -> None:
        if not self.enabled:
            return
        key = cache_key(config)
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump({"key": key, "version": __version__, "config": config, "payload": payload}, fh)
            os.replace(tmp, path)
        except OSError:
            # an unwritable cache only costs recomputation
            pass

    def fetch(self, config: dict[str, Any], compute: Callable[[], Any]) -> Any:
        """Cached payload for ``config``, computing and storing it on a miss.

        The payload is round-tripped through JSON on a miss as well, so a
        cold run returns exactly what a warm run would load.
        """
        hit = self.get(config)
        if hit is not None:
            self.hits += 1
            return hit
        self.misses += 1
        payload = json.loads(json.dumps(compute()))
        self.put(config, payload)
        return payload
