"""Content-addressed JSON cache for structure-constant tables.

Entries live in one directory (``$JSCHUR_CACHE_DIR``, default
``~/.cache/jschur``) next to a versioned ``manifest.json`` that records the
parameters, size and sha256 of every file. An entry whose bytes no longer
match its recorded hash is dropped on read.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, Optional

from . import __version__

MANIFEST_FORMAT = 1
ENV_VAR = "JSCHUR_CACHE_DIR"


def canonical_bytes(obj: Any) -> bytes:
    """Deterministic JSON encoding (sorted keys, no whitespace, trailing newline)."""
    return (json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n").encode()


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "jschur"


def _atomic_write(path: Path, data: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Cache:
    def __init__(self, root: Optional[os.PathLike] = None, version: str = __version__):
        self.root = Path(root) if root is not None else default_dir()
        self.version = version
        self.hits = 0
        self.misses = 0

    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def manifest(self) -> dict:
        try:
            data = json.loads(self.manifest_path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return {"format": MANIFEST_FORMAT, "entries": {}}
        if data.get("format") != MANIFEST_FORMAT:
            return {"format": MANIFEST_FORMAT, "entries": {}}
        return data

    def _save_manifest(self, man: dict):
        _atomic_write(self.manifest_path, canonical_bytes(man))

    def key(self, kind: str, params: dict) -> str:
        ident = {"kind": kind, "params": params, "version": self.version}
        return hashlib.sha256(canonical_bytes(ident)).hexdigest()

    def get(self, kind: str, params: dict) -> Optional[bytes]:
        k = self.key(kind, params)
        man = self.manifest()
        entry = man["entries"].get(k)
        if entry is None:
            self.misses += 1
            return None
        path = self.root / entry["file"]
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            data = None
        if data is None or hashlib.sha256(data).hexdigest() != entry["sha256"]:
            del man["entries"][k]
            self._save_manifest(man)
            if path.exists():
                path.unlink()
            self.misses += 1
            return None
        self.hits += 1
        return data

    def put(self, kind: str, params: dict, data: bytes) -> Path:
        k = self.key(kind, params)
        name = f"{k}.json"
        _atomic_write(self.root / name, data)
        man = self.manifest()
        man["entries"][k] = {"kind": kind, "params": params, "version": self.version, "file": name,
                             "size": len(data), "sha256": hashlib.sha256(data).hexdigest()}
        self._save_manifest(man)
        return self.root / name

    def get_or_compute(self, kind: str, params: dict, compute: Callable[[], Any]) -> bytes:
        data = self.get(kind, params)
        if data is None:
            data = canonical_bytes(compute())
            self.put(kind, params, data)
        return data
