"""Append-only JSON-lines cache of searched universes.

One line per universe::

    {"id": "<16 hex>", "config": {...}, "universe": {...}}

``id`` is a SHA-256 prefix of the canonical JSON of ``config``; every
integer in ``config`` and ``universe`` is a decimal string.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .universe import SearchConfig, UniverseParams

CACHE_NAME = "universes.jsonl"


def config_record(cfg: SearchConfig) -> dict:
    return {
        "B": str(cfg.B), "K": str(cfg.K), "mode": cfg.mode,
        "p_min": str(cfg.p_min), "p_max": str(cfg.p_max),
        "extra_divisors": [str(e) for e in cfg.extra_divisors],
        "iota": None if cfg.iota is None else str(cfg.iota),
    }


def config_id(cfg: SearchConfig) -> str:
    blob = json.dumps(config_record(cfg), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class UniverseCache:
    def __init__(self, directory):
        self.path = Path(directory) / CACHE_NAME

    def records(self):
        if not self.path.exists():
            return []
        with self.path.open() as fh:
            return [json.loads(line) for line in fh if line.strip()]

    def lookup(self, uid: str):
        """Universe whose id starts with ``uid``, or ``None``."""
        hits = {r["id"]: r for r in self.records() if r["id"].startswith(uid)}
        if len(hits) > 1:
            raise KeyError(f"universe id prefix {uid!r} is ambiguous")
        if not hits:
            return None
        return UniverseParams.from_record(next(iter(hits.values()))["universe"])

    def store(self, cfg: SearchConfig, params: UniverseParams) -> tuple:
        """Append unless present; returns ``(id, was_cached)``."""
        uid = config_id(cfg)
        if any(r["id"] == uid for r in self.records()):
            return uid, True
        self.path.parent.mkdir(parents=True, exist_ok=True)
        line = json.dumps({"id": uid, "config": config_record(cfg),
                           "universe": params.to_record()}, sort_keys=True)
        with self.path.open("a") as fh:
            fh.write(line + "\n")
        return uid, False
