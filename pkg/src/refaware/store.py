"""On-disk document store for reports and review events.

Layout under the data directory:

    reports/<repo_id>/<change_set_id>.json   one canonical document each
    events/<repo_id>/<change_set_id>.jsonl   append-only event log

Report writes go through a temp file and os.replace, so a reader never
sees a torn document and concurrent writers to one key resolve to
last-write-wins with one of the two intact. Key segments are restricted
to URL-safe characters, which also makes them safe path components.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import threading
from pathlib import Path

from .errors import ReportNotFound, ValidationError
from .report import (KEY_PATTERN, canonical_json, parse_timestamp,
                     validate_event, validate_report)

_KEY_RE = re.compile(KEY_PATTERN)


def _check_key(value: str, field: str) -> str:
    if not isinstance(value, str) or not _KEY_RE.fullmatch(value):
        raise ValidationError(
            f"{field} must match {KEY_PATTERN}", field_path=field)
    return value


class DocumentStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "reports").mkdir(parents=True, exist_ok=True)
        (self.root / "events").mkdir(parents=True, exist_ok=True)
        self._locks: dict[tuple[str, str], threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, repo_id: str, change_set_id: str) -> threading.Lock:
        key = (repo_id, change_set_id)
        with self._locks_guard:
            if key not in self._locks:
                self._locks[key] = threading.Lock()
            return self._locks[key]

    def _report_path(self, repo_id: str, change_set_id: str) -> Path:
        return self.root / "reports" / repo_id / f"{change_set_id}.json"

    def _events_path(self, repo_id: str, change_set_id: str) -> Path:
        return self.root / "events" / repo_id / f"{change_set_id}.jsonl"

    # ---------------------------------------------------------- reports

    def put_report(self, doc: dict) -> tuple[str, str]:
        """Validate and persist one report; last write wins per key.
        Returns the (repo_id, change_set_id) key."""
        validate_report(doc)
        repo_id = _check_key(doc["repo_id"], "repo_id")
        change_set_id = _check_key(doc["change_set_id"], "change_set_id")
        path = self._report_path(repo_id, change_set_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = canonical_json(doc).encode("utf-8")
        with self._lock(repo_id, change_set_id):
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as f:
                    f.write(payload)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        return repo_id, change_set_id

    def has_report(self, repo_id: str, change_set_id: str) -> bool:
        _check_key(repo_id, "repo_id")
        _check_key(change_set_id, "change_set_id")
        return self._report_path(repo_id, change_set_id).exists()

    def get_report(self, repo_id: str, change_set_id: str) -> dict:
        _check_key(repo_id, "repo_id")
        _check_key(change_set_id, "change_set_id")
        path = self._report_path(repo_id, change_set_id)
        try:
            raw = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise ReportNotFound(
                f"no report stored for {repo_id}/{change_set_id}") from None
        return json.loads(raw)

    def list_reports(self) -> list[tuple[str, str]]:
        keys = []
        reports = self.root / "reports"
        for repo_dir in sorted(p for p in reports.iterdir() if p.is_dir()):
            for f in sorted(repo_dir.glob("*.json")):
                keys.append((repo_dir.name, f.stem))
        return keys

    # ----------------------------------------------------------- events

    def append_events(self, events: list[dict]) -> int:
        """Validate and append events; all-or-nothing per call.

        Beyond schema checks, a WINDOW_CLOSE must not predate the latest
        WINDOW_OPEN already logged for the same refactoring, and
        timestamps within one call must be non-decreasing (a call is one
        client session's flush).
        """
        if not events:
            return 0
        for i, ev in enumerate(events):
            validate_event(ev, field_prefix=f"events.{i}")
        last = None
        for i, ev in enumerate(events):
            at = parse_timestamp(ev["at"])
            if last is not None and at < last:
                raise ValidationError("timestamps must be non-decreasing",
                                      field_path=f"events.{i}.at")
            last = at
        by_key: dict[tuple[str, str], list[dict]] = {}
        for ev in events:
            key = (_check_key(ev["repo_id"], "repo_id"),
                   _check_key(ev["change_set_id"], "change_set_id"))
            by_key.setdefault(key, []).append(ev)
        for (repo_id, change_set_id), batch in by_key.items():
            with self._lock(repo_id, change_set_id):
                existing = self._read_events(repo_id, change_set_id)
                open_at: dict[str, object] = {}
                for ev in existing:
                    if ev["event"] == "WINDOW_OPEN":
                        open_at[ev["refactoring_id"]] = parse_timestamp(ev["at"])
                for ev in batch:
                    at = parse_timestamp(ev["at"])
                    if ev["event"] == "WINDOW_OPEN":
                        open_at[ev["refactoring_id"]] = at
                    elif ev["event"] == "WINDOW_CLOSE":
                        opened = open_at.get(ev["refactoring_id"])
                        if opened is not None and at < opened:
                            raise ValidationError(
                                "WINDOW_CLOSE predates its WINDOW_OPEN",
                                field_path="at")
                path = self._events_path(repo_id, change_set_id)
                path.parent.mkdir(parents=True, exist_ok=True)
                lines = "".join(
                    json.dumps(ev, ensure_ascii=False, sort_keys=True) + "\n"
                    for ev in batch)
                with open(path, "a", encoding="utf-8") as f:
                    f.write(lines)
        return len(events)

    def _read_events(self, repo_id: str, change_set_id: str) -> list[dict]:
        path = self._events_path(repo_id, change_set_id)
        if not path.exists():
            return []
        out = []
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if line:
                    out.append(json.loads(line))
        return out

    def list_events(self, repo_id: str, change_set_id: str) -> list[dict]:
        _check_key(repo_id, "repo_id")
        _check_key(change_set_id, "change_set_id")
        with self._lock(repo_id, change_set_id):
            return self._read_events(repo_id, change_set_id)
