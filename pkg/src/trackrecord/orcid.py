"""ORCID iD handling and the pluggable record provider boundary.

An ORCID iD is 16 characters (15 digits plus a MOD 11-2 check character
that may be 'X'), canonically hyphenated in groups of four. Profiles
are keyed by the canonical form.

The record provider stands in for the real ORCID integration: anything
that can return a researcher's public record (display name plus work
identifiers) fits the protocol. Tests and the demo use the file-backed
provider.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

from .errors import ValidationError

_ORCID_URL_PREFIXES = ("https://orcid.org/", "http://orcid.org/", "orcid.org/")
_BARE_ORCID_RE = re.compile(r"^\d{15}[\dX]$")


def checksum_char(base_digits: str) -> str:
    """MOD 11-2 check character for the 15 leading digits."""
    total = 0
    for ch in base_digits:
        total = (total + int(ch)) * 2
    result = (12 - total % 11) % 11
    return "X" if result == 10 else str(result)


def normalize_orcid(raw: str) -> str:
    """Canonical hyphenated ORCID iD, or ValidationError.

    Accepts the bare 16 characters, the hyphenated form, and the
    orcid.org URL forms; the check character is verified.
    """
    value = raw.strip()
    lowered = value.lower()
    for prefix in _ORCID_URL_PREFIXES:
        if lowered.startswith(prefix):
            value = value[len(prefix) :]
            break
    compact = value.replace("-", "").upper()
    if not _BARE_ORCID_RE.match(compact):
        raise ValidationError(f"not a 16-character ORCID iD: {raw!r}")
    if checksum_char(compact[:15]) != compact[15]:
        raise ValidationError(f"ORCID iD fails its checksum: {raw!r}")
    return "-".join(compact[i : i + 4] for i in range(0, 16, 4))


def is_valid_orcid(raw: str) -> bool:
    try:
        normalize_orcid(raw)
    except ValidationError:
        return False
    return True


@dataclass(frozen=True)
class ProviderRecord:
    """Public record for one researcher: identity plus work identifiers."""

    orcid: str
    display_name: str
    work_dois: tuple[str, ...]


class RecordProvider(Protocol):
    def fetch(self, orcid: str) -> ProviderRecord | None:
        """Return the record for a canonical ORCID iD, or None."""
        ...


class FileRecordProvider:
    """Record provider backed by a JSON fixture file.

    File shape: ``{"<orcid>": {"display_name": str, "works": [doi, ...]}}``.
    """

    def __init__(self, path: str | Path):
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValidationError(f"{path}: provider fixture must be a JSON object")
        self._records: dict[str, ProviderRecord] = {}
        for key, value in raw.items():
            orcid = normalize_orcid(key)
            self._records[orcid] = ProviderRecord(
                orcid=orcid,
                display_name=str(value.get("display_name", "")),
                work_dois=tuple(str(d) for d in value.get("works", ())),
            )

    def fetch(self, orcid: str) -> ProviderRecord | None:
        return self._records.get(orcid)


class StaticRecordProvider:
    """In-memory provider for tests."""

    def __init__(self, records: dict[str, ProviderRecord] | None = None):
        self._records = dict(records or {})

    def add(self, record: ProviderRecord) -> None:
        self._records[normalize_orcid(record.orcid)] = record

    def fetch(self, orcid: str) -> ProviderRecord | None:
        return self._records.get(orcid)
