"""Request batches: question text plus sentence tokens, one JSONL record each.

The question text arrives fully instantiated; this adapter never applies
template logic of its own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


class RequestError(ValueError):
    """Malformed request batch."""


@dataclass(frozen=True)
class AdapterRequest:
    kind: str  # trigger | argument
    doc_id: str
    sent_id: str
    question: str
    tokens: tuple[str, ...]
    event_type: str | None = None
    role_name: str | None = None
    trigger_offset: int | None = None

    def key_fields(self) -> dict:
        out = {"doc_id": self.doc_id, "sent_id": self.sent_id}
        if self.kind == "argument":
            out.update(
                event_type=self.event_type,
                role_name=self.role_name,
                trigger_offset=self.trigger_offset,
            )
        return out


def read_requests(path: str | Path) -> list[AdapterRequest]:
    requests = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise RequestError(f"{path}:{lineno}: bad record: {e}") from e
            kind = rec.get("kind")
            if kind not in ("trigger", "argument"):
                raise RequestError(f"{path}:{lineno}: unknown request kind {kind!r}")
            missing = [k for k in ("doc_id", "sent_id", "question", "tokens") if k not in rec]
            if kind == "argument":
                missing += [
                    k for k in ("event_type", "role_name", "trigger_offset") if k not in rec
                ]
            if missing:
                raise RequestError(f"{path}:{lineno}: missing fields {missing}")
            requests.append(
                AdapterRequest(
                    kind=kind,
                    doc_id=str(rec["doc_id"]),
                    sent_id=str(rec["sent_id"]),
                    question=str(rec["question"]),
                    tokens=tuple(str(t) for t in rec["tokens"]),
                    event_type=rec.get("event_type"),
                    role_name=rec.get("role_name"),
                    trigger_offset=rec.get("trigger_offset"),
                )
            )
    return requests
