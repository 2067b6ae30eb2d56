"""Profile persistence and the token table.

Profiles live in one JSON snapshot, written atomically (temp file plus
rename) so a crash never leaves a half-written store. Reads are lock
free on an in-memory dict; mutations to one profile are serialized by a
per-profile lock, and snapshot writes by a global one, so concurrent
edits to different profiles do not contend.

Bearer tokens are provisioned from a config-owned JSON file mapping the
opaque token to exactly one ORCID iD, optionally with an expiry.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable

from .errors import ConflictError, NotFoundError, StoreError
from .graph import CitationGraph
from .orcid import normalize_orcid
from .profiles import ResearcherProfile, profile_from_dict, profile_to_dict

STORE_FORMAT = "trackrecord-profiles"
STORE_VERSION = 1


class ProfileStore:
    """In-memory profile map with a JSON snapshot behind it."""

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._profiles: dict[str, ResearcherProfile] = {}
        self._registry = threading.Lock()  # guards the dict and lock table
        self._profile_locks: dict[str, threading.Lock] = {}
        self._io = threading.Lock()

    # -- loading -----------------------------------------------------------

    @classmethod
    def load(cls, path: str | Path, graph: CitationGraph) -> "ProfileStore":
        """Load a snapshot; a missing file is an empty store, a corrupt
        file is a StoreError and nothing is kept."""
        store = cls(path)
        p = Path(path)
        if not p.exists():
            return store
        try:
            with open(p, encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StoreError(f"{path}: corrupt profile store: {exc.msg}") from None
        if not isinstance(raw, dict) or not isinstance(raw.get("profiles"), dict):
            raise StoreError(f"{path}: corrupt profile store: missing 'profiles'")
        if raw.get("format", STORE_FORMAT) != STORE_FORMAT:
            raise StoreError(f"{path}: not a profile store")
        if raw.get("version", STORE_VERSION) != STORE_VERSION:
            raise StoreError(f"{path}: unsupported store version")
        loaded: dict[str, ResearcherProfile] = {}
        try:
            for orcid, data in raw["profiles"].items():
                profile = profile_from_dict(data, graph)
                if profile.orcid_id != orcid:
                    raise StoreError(f"{path}: key {orcid} does not match its profile")
                loaded[orcid] = profile
        except Exception as exc:
            raise StoreError(f"{path}: corrupt profile store: {exc}") from exc
        store._profiles = loaded
        return store

    # -- persistence -------------------------------------------------------

    def save(self) -> None:
        """Atomic snapshot write; no-op for a pathless (test) store."""
        if self._path is None:
            return
        with self._io:
            with self._registry:
                payload = {
                    "format": STORE_FORMAT,
                    "version": STORE_VERSION,
                    "profiles": {
                        orcid: profile_to_dict(p)
                        for orcid, p in sorted(self._profiles.items())
                    },
                }
            self._path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(
                dir=self._path.parent, prefix=self._path.name, suffix=".tmp"
            )
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(payload, fh, indent=2, sort_keys=True)
                    fh.write("\n")
                os.replace(tmp, self._path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    # -- access ------------------------------------------------------------

    def get(self, orcid: str) -> ResearcherProfile | None:
        return self._profiles.get(orcid)

    def orcids(self) -> list[str]:
        return sorted(self._profiles)

    def __len__(self) -> int:
        return len(self._profiles)

    def create(self, profile: ResearcherProfile) -> None:
        with self._registry:
            if profile.orcid_id in self._profiles:
                raise ConflictError(f"profile {profile.orcid_id} already exists")
            self._profiles[profile.orcid_id] = profile

    def _lock_for(self, orcid: str) -> threading.Lock:
        with self._registry:
            lock = self._profile_locks.get(orcid)
            if lock is None:
                lock = self._profile_locks[orcid] = threading.Lock()
            return lock

    def update(
        self, orcid: str, mutate: Callable[[ResearcherProfile], ResearcherProfile]
    ) -> ResearcherProfile:
        """Apply a pure mutation under this profile's lock and publish it."""
        lock = self._lock_for(orcid)
        with lock:
            current = self._profiles.get(orcid)
            if current is None:
                raise NotFoundError(f"no profile for {orcid}")
            updated = mutate(current)
            with self._registry:
                self._profiles[orcid] = updated
            return updated


# ---------------------------------------------------------------------------
# Token table
# ---------------------------------------------------------------------------


class TokenTable:
    """Static bearer-token table: token -> one ORCID iD, optional expiry.

    File shape: ``{"<token>": "<orcid>"}`` or
    ``{"<token>": {"orcid": ..., "expires_at": "<ISO 8601>"}}``.
    """

    def __init__(self, entries: dict[str, tuple[str, datetime | None]] | None = None):
        self._entries = dict(entries or {})

    @classmethod
    def load(cls, path: str | Path) -> "TokenTable":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise StoreError(f"{path}: token table must be a JSON object")
        entries: dict[str, tuple[str, datetime | None]] = {}
        for token, value in raw.items():
            if isinstance(value, str):
                entries[token] = (normalize_orcid(value), None)
            elif isinstance(value, dict):
                expires = value.get("expires_at")
                expires_dt = datetime.fromisoformat(expires) if expires else None
                if expires_dt is not None and expires_dt.tzinfo is None:
                    expires_dt = expires_dt.replace(tzinfo=timezone.utc)
                entries[token] = (normalize_orcid(str(value["orcid"])), expires_dt)
            else:
                raise StoreError(f"{path}: bad token entry for {token!r}")
        return cls(entries)

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, str]]) -> "TokenTable":
        return cls({token: (normalize_orcid(orcid), None) for token, orcid in pairs})

    def resolve(self, token: str, now: datetime | None = None) -> str | None:
        """ORCID iD for a live token; None when unknown or expired."""
        entry = self._entries.get(token)
        if entry is None:
            return None
        orcid, expires = entry
        if expires is not None:
            now = now or datetime.now(timezone.utc)
            if now >= expires:
                return None
        return orcid
