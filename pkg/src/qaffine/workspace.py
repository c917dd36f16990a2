"""Workspace: configuration, content-addressed result cache and run log.

Layout under the root (QAFFINE_HOME, default ~/.qaffine)::

    config.json     optional overrides of DEFAULTS
    cache/<hash>.json
    reports/<scenario>.json
    runs.log        one JSON record per line, timestamps live here only
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path

DEFAULTS = {
    "fm_budget": 10 ** 6,
    "cluster_budget": 10000,
    "chain_depth": 4,
    "fit_tol": 1e-8,
    "commutator_tol": 1e-10,
    "seed": 0,
}


def dumps(obj) -> str:
    """Canonical JSON text; the byte format of every payload and cache entry."""
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=True, allow_nan=False) + "\n"


def content_hash(obj) -> str:
    return hashlib.sha256(dumps(obj).encode()).hexdigest()


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Workspace:
    def __init__(self, root=None):
        if root is None:
            root = os.environ.get("QAFFINE_HOME") or Path.home() / ".qaffine"
        self.root = Path(root)

    @property
    def cache_dir(self) -> Path:
        return self.root / "cache"

    @property
    def report_dir(self) -> Path:
        return self.root / "reports"

    @property
    def log_path(self) -> Path:
        return self.root / "runs.log"

    def config(self) -> dict:
        cfg = dict(DEFAULTS)
        p = self.root / "config.json"
        if p.exists():
            user = json.loads(p.read_text())
            unknown = set(user) - set(DEFAULTS)
            if unknown:
                raise ValueError(f"unknown config keys: {sorted(unknown)}")
            cfg.update(user)
        return cfg

    # cache

    def cache_key(self, kind: str, params: dict) -> str:
        return content_hash({"kind": kind, "params": params})

    def cache_get(self, key: str):
        p = self.cache_dir / f"{key}.json"
        if not p.exists():
            return None
        return json.loads(p.read_text())

    def cache_put(self, key: str, payload) -> str:
        text = dumps(payload)
        atomic_write(self.cache_dir / f"{key}.json", text)
        return text

    def cached(self, kind: str, params: dict, compute):
        """Return (payload, hit).  compute() must return JSON-ready data."""
        key = self.cache_key(kind, params)
        got = self.cache_get(key)
        if got is not None:
            return got, True
        payload = json.loads(dumps(compute()))
        self.cache_put(key, payload)
        return payload, False

    def cache_gc(self, age: float = 0.0) -> int:
        """Delete cache entries not modified within ``age`` seconds; return bytes freed."""
        if not self.cache_dir.exists():
            return 0
        cutoff = time.time() - age
        freed = 0
        for p in sorted(self.cache_dir.glob("*.json")):
            st = p.stat()
            if age <= 0 or st.st_mtime <= cutoff:
                freed += st.st_size
                p.unlink()
        return freed

    # reports and log

    def write_report(self, name: str, payload) -> Path:
        p = self.report_dir / f"{name}.json"
        atomic_write(p, dumps(payload))
        return p

    def log(self, record: dict) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        line = json.dumps({"time": time.time(), **record}, sort_keys=True)
        with open(self.log_path, "a") as fh:
            fh.write(line + "\n")

    def runs(self) -> list:
        if not self.log_path.exists():
            return []
        return [json.loads(x) for x in self.log_path.read_text().splitlines() if x.strip()]
