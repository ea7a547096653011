"""Append-only, hash-chained event log.

Every mutation in the system is persisted as one JSON object per line.
Each entry carries a digest of its payload plus the digest of the
previous entry, so the file doubles as a tamper-evident audit trail:
any single-byte change to a committed line is detectable, and
verification reports the first broken sequence number.

Lines are written in canonical form (sorted keys, compact separators,
ASCII only). Verification checks raw bytes against the canonical
re-serialization, which closes the gap where a byte flip re-parses to
an equivalent JSON value.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Optional

from ..errors import ChainBroken

SCHEMA_VERSION = 1
GENESIS_DIGEST = "0" * 64
HASH_ALGORITHM = "sha256"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest_of(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


@dataclass
class AuditEntry:
    """One committed event; the chain invariant links consecutive entries."""

    seq: int
    action: str
    actor: str
    subject_ref: str
    payload: dict
    payload_digest: str
    prev_digest: str
    created_at: str
    digest: str

    def body(self) -> dict:
        return {
            "v": SCHEMA_VERSION,
            "seq": self.seq,
            "action": self.action,
            "actor": self.actor,
            "subject_ref": self.subject_ref,
            "payload": self.payload,
            "payload_digest": self.payload_digest,
            "prev_digest": self.prev_digest,
            "created_at": self.created_at,
        }

    def to_dict(self) -> dict:
        d = self.body()
        d["digest"] = self.digest
        return d

    @classmethod
    def build(cls, seq: int, action: str, actor: str, subject_ref: str,
              payload: dict, prev_digest: str, created_at: str) -> "AuditEntry":
        payload_digest = digest_of(payload)
        entry = cls(
            seq=seq,
            action=action,
            actor=actor,
            subject_ref=subject_ref,
            payload=payload,
            payload_digest=payload_digest,
            prev_digest=prev_digest,
            created_at=created_at,
            digest="",
        )
        entry.digest = digest_of(entry.body())
        return entry

    @classmethod
    def from_dict(cls, d: dict) -> "AuditEntry":
        return cls(
            seq=d["seq"],
            action=d["action"],
            actor=d["actor"],
            subject_ref=d["subject_ref"],
            payload=d["payload"],
            payload_digest=d["payload_digest"],
            prev_digest=d["prev_digest"],
            created_at=d["created_at"],
            digest=d["digest"],
        )


def _header_line() -> str:
    return canonical_json({
        "v": SCHEMA_VERSION,
        "kind": "header",
        "hash_algorithm": HASH_ALGORITHM,
        "genesis": GENESIS_DIGEST,
    })


class EventLog:
    """Writer and reader for the chained log file.

    ``path=None`` keeps the log purely in memory (used for scratch
    stores in tests and fused previews).
    """

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else None
        self._fh: Optional[io.TextIOWrapper] = None
        self.last_seq = -1
        self.last_digest = GENESIS_DIGEST
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            if not self.path.exists():
                self.path.write_text(_header_line() + "\n", encoding="utf-8")
            self._fh = open(self.path, "a", encoding="utf-8")

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def set_position(self, last_seq: int, last_digest: str) -> None:
        """Move the chain head, e.g. after loading a snapshot or replay."""
        self.last_seq = last_seq
        self.last_digest = last_digest

    def append(self, action: str, actor: str, subject_ref: str, payload: dict,
               created_at: str, fsync: bool = False) -> AuditEntry:
        entry = AuditEntry.build(
            seq=self.last_seq + 1,
            action=action,
            actor=actor,
            subject_ref=subject_ref,
            payload=payload,
            prev_digest=self.last_digest,
            created_at=created_at,
        )
        if self._fh is not None:
            self._fh.write(canonical_json(entry.to_dict()) + "\n")
            self._fh.flush()
            if fsync:
                os.fsync(self._fh.fileno())
        self.last_seq = entry.seq
        self.last_digest = entry.digest
        return entry


def read_entries(path: Path, from_seq: int = 0) -> Iterator[AuditEntry]:
    """Yield committed entries with seq >= from_seq; raises ChainBroken on garbage."""
    for lineno, raw in enumerate(_read_lines(path)):
        if lineno == 0:
            continue  # header
        try:
            entry = AuditEntry.from_dict(json.loads(raw))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ChainBroken(f"unreadable log line {lineno}: {exc}")
        if entry.seq >= from_seq:
            yield entry


def _read_lines(path: Path) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    return [line for line in text.split("\n") if line != ""]


def _read_raw_lines(path: Path) -> list[bytes]:
    data = Path(path).read_bytes()
    return [line for line in data.split(b"\n") if line != b""]


def verify_log(path: Path, from_seq: int = 0, to_seq: Optional[int] = None) -> dict:
    """Recompute the digest chain over the log file.

    Returns {"ok": True, "entries": n} on success, otherwise
    {"ok": False, "first_bad_seq": seq}. Verification always starts at
    genesis (digests cannot be checked mid-chain) but faults outside
    [from_seq, to_seq] are ignored when a range is given.
    """
    lines = _read_raw_lines(path)
    if not lines:
        return {"ok": True, "entries": 0}

    def in_range(seq: int) -> bool:
        if seq < from_seq:
            return False
        return to_seq is None or seq <= to_seq

    def fail(seq: int):
        if in_range(seq):
            return {"ok": False, "first_bad_seq": seq}
        return None

    # Header: any corruption here is reported as seq 0.
    if lines[0] != _header_line().encode("utf-8"):
        result = fail(0)
        if result:
            return result

    prev_digest = GENESIS_DIGEST
    expected_seq = 0
    checked = 0
    for raw_bytes in lines[1:]:
        bad = False
        entry = None
        try:
            raw = raw_bytes.decode("utf-8")
            parsed = json.loads(raw)
            entry = AuditEntry.from_dict(parsed)
        except (UnicodeDecodeError, json.JSONDecodeError, KeyError, TypeError):
            bad = True
        if not bad:
            # Canonical-bytes check catches flips that re-parse cleanly.
            if canonical_json(parsed) != raw:
                bad = True
            elif entry.seq != expected_seq:
                bad = True
            elif entry.prev_digest != prev_digest:
                bad = True
            elif entry.payload_digest != digest_of(entry.payload):
                bad = True
            elif entry.digest != digest_of(entry.body()):
                bad = True
        if bad:
            result = fail(expected_seq)
            if result:
                return result
            # Cannot re-anchor the chain after an unverifiable entry.
            return {"ok": True, "entries": checked, "truncated_check_at": expected_seq}
        prev_digest = entry.digest
        expected_seq += 1
        checked += 1

    return {"ok": True, "entries": checked}
