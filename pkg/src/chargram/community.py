"""Usage logging and recency-weighted popularity.

Events are appended as one JSON object per line. Popularity blends recency
and raw frequency: ``T**beta * R**(1-beta)`` with ``T = 1/S``, where S is
the count of whole UTC days since the key was last used (today = 1) and R
the total event count. High counts alone cannot dominate: a key untouched
for S days decays by ``S**-beta``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import FormatError, InvalidArgumentError

QUERY = "query"
DOC_VIEW = "doc_view"
KINDS = (QUERY, DOC_VIEW)

USER_SCOPE = "user"
COMMUNITY_SCOPE = "community"

POPULARITY_BETA = 0.6


@dataclass
class UsageEvent:
    user_id: str
    kind: str
    key: str
    timestamp: datetime

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgumentError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.key:
            raise InvalidArgumentError("key must be non-empty")
        if self.timestamp.tzinfo is None:
            self.timestamp = self.timestamp.replace(tzinfo=timezone.utc)


@dataclass
class PopularityScore:
    key: str
    recency: float  # T = 1/S
    raw_count: int  # R
    score: float


class UsageLog:
    """Append-only newline-delimited JSON event log."""

    def __init__(self, path):
        self.path = Path(path)

    def append(self, event: UsageEvent) -> None:
        record = {
            "user": event.user_id,
            "kind": event.kind,
            "key": event.key,
            "ts": event.timestamp.astimezone(timezone.utc).isoformat(),
        }
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

    def read_all(self) -> list[UsageEvent]:
        if not self.path.exists():
            return []
        events = []
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    events.append(
                        UsageEvent(rec["user"], rec["kind"], rec["key"], datetime.fromisoformat(rec["ts"]))
                    )
                except (json.JSONDecodeError, KeyError, ValueError) as exc:
                    raise FormatError(f"corrupt usage log at line {lineno}: {exc}") from exc
        return events


def log_event(store: UsageLog, event: UsageEvent) -> None:
    store.append(event)


def popularity(events_for_key: list[UsageEvent], now: datetime, beta: float = POPULARITY_BETA) -> PopularityScore:
    """Score one key from its events; requires at least one event."""
    if not events_for_key:
        raise InvalidArgumentError("popularity needs at least one event")
    last = max(e.timestamp for e in events_for_key)
    now = now.astimezone(timezone.utc) if now.tzinfo else now.replace(tzinfo=timezone.utc)
    days_since = max(0, (now.date() - last.astimezone(timezone.utc).date()).days)
    s = days_since + 1
    t = 1.0 / s
    r = len(events_for_key)
    return PopularityScore(
        key=events_for_key[0].key,
        recency=t,
        raw_count=r,
        score=t**beta * r ** (1.0 - beta),
    )


def top_items(
    store: UsageLog,
    kind: str,
    scope: str,
    now: datetime,
    limit: int = 10,
    user_id: str | None = None,
) -> list[PopularityScore]:
    """Top keys of one kind by popularity, community-wide or for one user."""
    if kind not in KINDS:
        raise InvalidArgumentError(f"kind must be one of {KINDS}, got {kind!r}")
    if scope not in (USER_SCOPE, COMMUNITY_SCOPE):
        raise InvalidArgumentError(f"scope must be user or community, got {scope!r}")
    if scope == USER_SCOPE and not user_id:
        raise InvalidArgumentError("user scope requires a user_id")
    events = [e for e in store.read_all() if e.kind == kind]
    if scope == USER_SCOPE:
        events = [e for e in events if e.user_id == user_id]
    by_key: dict[str, list[UsageEvent]] = {}
    for event in events:
        by_key.setdefault(event.key, []).append(event)
    scored = [(popularity(evts, now), max(e.timestamp for e in evts)) for evts in by_key.values()]
    scored.sort(key=lambda item: (-item[0].score, -item[1].timestamp(), item[0].key))
    return [score for score, _ in scored[:limit]]
