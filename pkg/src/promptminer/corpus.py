"""Ingestion and indexing of timestamped query records (JSON Lines)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .errors import FileUnreadable

__all__ = ["ActionKind", "QueryRecord", "IngestStats", "Corpus", "ingest", "by_user"]


class ActionKind(str, Enum):
    DRAFT = "draft"
    VARIANT = "variant"
    UPSCALE_LIGHT = "upscale_light"
    UPSCALE_BETA = "upscale_beta"
    UPSCALE_MAX = "upscale_max"
    REMASTER = "remaster"

    @property
    def is_upscale(self) -> bool:
        return self in _UPSCALE_KINDS


_UPSCALE_KINDS = {ActionKind.UPSCALE_LIGHT, ActionKind.UPSCALE_BETA, ActionKind.UPSCALE_MAX}
_ACTION_BY_VALUE = {kind.value: kind for kind in ActionKind}


@dataclass(slots=True)
class QueryRecord:
    """One logged generation event."""

    id: str
    user: str
    ts: int
    text: str
    action: ActionKind
    channel: str | None = None


@dataclass
class IngestStats:
    read: int = 0
    loaded: int = 0
    duplicates: int = 0
    rejected: int = 0
    errors: dict[str, int] = field(default_factory=dict)

    def _reject(self, reason: str) -> None:
        self.rejected += 1
        self.errors[reason] = self.errors.get(reason, 0) + 1


class Corpus:
    """Immutable-after-load record collection with a per-user time index."""

    def __init__(self, records: list[QueryRecord]):
        self.records = records
        self.by_id = {r.id: r for r in records}
        index: dict[str, list[QueryRecord]] = {}
        for r in records:
            index.setdefault(r.user, []).append(r)
        self.user_index: dict[str, list[str]] = {}
        for user, recs in index.items():
            recs.sort(key=lambda r: (r.ts, r.id))
            self.user_index[user] = [r.id for r in recs]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def _parse_record(obj: dict, stats: IngestStats) -> QueryRecord | None:
    for name in ("id", "user", "text"):
        value = obj.get(name)
        if not isinstance(value, str) or not value:
            stats._reject("missing_field")
            return None
    ts = obj.get("ts")
    if isinstance(ts, bool) or not isinstance(ts, int) or ts < 0:
        stats._reject("missing_field")
        return None
    action = _ACTION_BY_VALUE.get(obj.get("action"))
    if action is None:
        stats._reject("unknown_action")
        return None
    channel = obj.get("channel")
    if channel is not None and not isinstance(channel, str):
        stats._reject("missing_field")
        return None
    return QueryRecord(
        id=obj["id"], user=obj["user"], ts=ts, text=obj["text"], action=action, channel=channel
    )


def ingest(path) -> tuple[Corpus, IngestStats]:
    """Load a JSON Lines corpus; invalid records are counted, not fatal.

    Always: stats.read == stats.loaded + stats.duplicates + stats.rejected.
    """
    stats = IngestStats()
    records: list[QueryRecord] = []
    seen: set[str] = set()
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise FileUnreadable(str(exc)) from exc
    with fh:
        for line in fh:
            if not line.strip():
                continue
            stats.read += 1
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                stats._reject("invalid_json")
                continue
            if not isinstance(obj, dict):
                stats._reject("invalid_json")
                continue
            record = _parse_record(obj, stats)
            if record is None:
                continue
            if record.id in seen:
                stats.duplicates += 1
                continue
            seen.add(record.id)
            records.append(record)
            stats.loaded += 1
    return Corpus(records), stats


def by_user(corpus: Corpus, user: str) -> list[QueryRecord]:
    """Records for `user`, ascending by (ts, id); [] for unknown users."""
    return [corpus.by_id[rid] for rid in corpus.user_index.get(user, [])]
