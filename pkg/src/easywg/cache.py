"""On-disk cache of Weingarten matrices.

One versioned JSON file per ``(category, k, n)``.  Entries are ``"num/den"``
strings.  Writes take a per-file lock and land through an atomic rename, so
concurrent builders of the same key never observe a torn file.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from filelock import FileLock

from .exact import RationalMatrix

__all__ = ["CACHE_ENV", "FORMAT_VERSION", "cache_dir", "load", "store", "SINGULAR"]

CACHE_ENV = "EASYWG_CACHE_DIR"
FORMAT_VERSION = 1
SINGULAR = "singular"


def cache_dir() -> Path | None:
    """Directory from ``$EASYWG_CACHE_DIR`` (``""`` or ``"off"`` disables),
    defaulting to ``~/.cache/easywg``."""
    raw = os.environ.get(CACHE_ENV)
    if raw is None:
        return Path.home() / ".cache" / "easywg"
    if raw.strip().lower() in ("", "off", "none", "0"):
        return None
    return Path(raw).expanduser()


def _path(root: Path, slug: str, k: int, n: int) -> Path:
    return root / f"wg-v{FORMAT_VERSION}-{slug}-{k}-{n}.json"


def load(slug: str, k: int, n: int, basis: list[str]):
    """Cached Weingarten matrix, :data:`SINGULAR`, or ``None`` on a miss.

    Files with another version or basis are ignored.
    """
    root = cache_dir()
    if root is None:
        return None
    path = _path(root, slug, k, n)
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("version") != FORMAT_VERSION or data.get("basis") != basis:
        return None
    if data.get("singular"):
        return SINGULAR
    try:
        return RationalMatrix.from_strings(data["wg"])
    except (KeyError, ValueError, ZeroDivisionError):
        return None


def store(slug: str, k: int, n: int, basis: list[str], wg: RationalMatrix | None) -> None:
    """Write ``wg`` (``None`` marks a singular Gram matrix).  Failures to write
    are silently ignored: the cache is an optimization."""
    root = cache_dir()
    if root is None:
        return
    path = _path(root, slug, k, n)
    payload = {
        "version": FORMAT_VERSION,
        "category": slug,
        "k": k,
        "n": n,
        "basis": basis,
        "singular": wg is None,
        "wg": None if wg is None else wg.to_strings(),
    }
    try:
        root.mkdir(parents=True, exist_ok=True)
        with FileLock(str(path) + ".lock"):
            fd, tmp = tempfile.mkstemp(dir=root, prefix=path.name, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh)
            os.chmod(tmp, 0o644)
            os.replace(tmp, path)
    except OSError:
        pass
