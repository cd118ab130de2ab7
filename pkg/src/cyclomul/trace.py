"""Recursion traces and run reports.

Each pipeline call appends one flat record carrying its depth and the
index of its parent record, so the call tree can be rebuilt from JSON.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field


@dataclass
class CallRecord:
    index: int
    parent: int | None
    kind: str  # "int", "poly" or "admissible"
    depth: int
    info: dict = field(default_factory=dict)
    seconds: float = 0.0


class Trace:
    def __init__(self):
        self.records: list[CallRecord] = []
        self._stack: list[int] = []
        self.fallbacks: list[str] = []

    @contextmanager
    def call(self, kind: str, depth: int, **info):
        rec = CallRecord(len(self.records), self._stack[-1] if self._stack else None, kind, depth, dict(info))
        self.records.append(rec)
        self._stack.append(rec.index)
        start = time.perf_counter()
        try:
            yield rec
        finally:
            rec.seconds = time.perf_counter() - start
            self._stack.pop()

    def note_fallback(self, rec: CallRecord | None, reason: str):
        where = f"{rec.kind}@{rec.depth}" if rec is not None else "top"
        self.fallbacks.append(f"{where}: {reason}")
        if rec is not None:
            rec.info.setdefault("fallbacks", []).append(reason)

    def of_kind(self, kind: str) -> list[CallRecord]:
        return [r for r in self.records if r.kind == kind]

    def max_depth(self, kind: str = "int") -> int:
        return max((r.depth for r in self.of_kind(kind)), default=-1)

    def parent_of(self, rec: CallRecord) -> CallRecord | None:
        return None if rec.parent is None else self.records[rec.parent]

    def nearest(self, rec: CallRecord, kind: str) -> CallRecord | None:
        cur = self.parent_of(rec)
        while cur is not None and cur.kind != kind:
            cur = self.parent_of(cur)
        return cur

    def to_list(self) -> list[dict]:
        return [asdict(r) for r in self.records]

    @classmethod
    def from_list(cls, items) -> "Trace":
        tr = cls()
        tr.records = [CallRecord(**it) for it in items]
        return tr


@dataclass
class RunReport:
    command: list[str]
    profile: dict
    timings: dict
    trace: list[dict]
    fallbacks: list[str]
    result: list[str]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))
