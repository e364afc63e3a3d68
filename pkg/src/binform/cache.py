"""Content-addressed on-disk cache for expensive polynomials.

A cache entry is keyed by (operation name, parameters, engine version).  The
file stores the key, a SHA-256 of the canonical serialization, and the
serialization itself; entries whose hash does not match are discarded and
recomputed.
"""

from __future__ import annotations

import hashlib
import logging
import os
import threading
from pathlib import Path
from typing import Callable, Optional

from .ring import Poly, parse

ENV_VAR = "BINFORM_CACHE_DIR"
ENGINE_VERSION = "1"

log = logging.getLogger(__name__)

_lock = threading.Lock()
_cache_dir: Optional[Path] = None


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    import platformdirs

    return Path(platformdirs.user_cache_dir("binform"))


def configure(path) -> None:
    """Enable the disk cache at ``path``; ``None`` disables it."""
    global _cache_dir
    _cache_dir = Path(path) if path is not None else None


def cache_dir() -> Optional[Path]:
    return _cache_dir


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _key(op: str, params: str) -> str:
    return f"{op}|{params}|v{ENGINE_VERSION}"


def _path(root: Path, key: str) -> Path:
    return root / f"{digest(key)[:32]}.poly"


def load(op: str, params: str = "") -> Optional[Poly]:
    root = _cache_dir
    if root is None:
        return None
    key = _key(op, params)
    path = _path(root, key)
    try:
        stored_key, stored_hash, body = path.read_text(encoding="utf-8").split("\n", 2)
    except (OSError, ValueError):
        return None
    body = body.rstrip("\n")
    if stored_key != key or stored_hash != digest(body):
        log.warning("discarding corrupt cache entry %s", path)
        return None
    return parse(body)


def store(op: str, params: str, poly: Poly) -> None:
    root = _cache_dir
    if root is None:
        return
    key = _key(op, params)
    body = str(poly)
    root.mkdir(parents=True, exist_ok=True)
    path = _path(root, key)
    tmp = path.with_suffix(f".tmp{os.getpid()}.{threading.get_ident()}")
    tmp.write_text(f"{key}\n{digest(body)}\n{body}\n", encoding="utf-8")
    os.replace(tmp, path)


def ensure(op: str, params: str, poly: Poly) -> None:
    """Store an already known value if the configured cache lacks it."""
    root = _cache_dir
    if root is not None and not _path(root, _key(op, params)).exists():
        store(op, params, poly)


def cached_poly(op: str, params: str, compute: Callable[[], Poly]) -> Poly:
    hit = load(op, params)
    if hit is not None:
        return hit
    with _lock:
        hit = load(op, params)
        if hit is not None:
            return hit
        value = compute()
        store(op, params, value)
        return value
