"""On-disk JSON cache for the integral Macdonald basis, one file per degree."""

from __future__ import annotations

import json
import os
from pathlib import Path

SCHEMA = 1


def cache_dir() -> Path | None:
    """Directory from ``MACLAB_CACHE`` (default ``./cache``); empty string disables it."""
    raw = os.environ.get("MACLAB_CACHE", "cache")
    if not raw:
        return None
    return Path(raw)


def degree_path(n: int) -> Path | None:
    root = cache_dir()
    return None if root is None else root / f"degree_{n}.json"


def load_degree(n: int) -> dict | None:
    path = degree_path(n)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("schema") != SCHEMA or data.get("degree") != n:
        return None
    return data


def store_degree(n: int, payload: dict) -> Path | None:
    path = degree_path(n)
    if path is None:
        return None
    data = {"schema": SCHEMA, "degree": n, **payload}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, sort_keys=True))
        tmp.replace(path)
    except OSError:
        return None
    return path


def cached_degrees() -> list[int]:
    root = cache_dir()
    if root is None or not root.is_dir():
        return []
    out = []
    for p in root.glob("degree_*.json"):
        try:
            out.append(int(p.stem.split("_")[1]))
        except ValueError:
            continue
    return sorted(out)


def clear() -> int:
    root = cache_dir()
    if root is None or not root.is_dir():
        return 0
    count = 0
    for p in root.glob("degree_*.json"):
        p.unlink()
        count += 1
    return count
