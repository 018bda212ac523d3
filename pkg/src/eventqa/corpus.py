"""Corpus ingestion (JSONL, one sentence per line) and the zero-shot role split."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .metrics import ArgMention, TriggerMention
from .ontology import EventOntology, lookup_roles
from .sequences import GoldArgument, GoldEvent, Sentence

# Argument roles held out from training in the zero-shot evaluation.
DEFAULT_UNSEEN_ROLES = frozenset(
    {"Vehicle", "Artifact", "Target", "Victim", "Recipient", "Buyer"}
)


class CorpusError(ValueError):
    """Raised for schema or validation failures in corpus files."""


def sample_corpus_path() -> Path:
    """The small synthetic corpus shipped with the package."""
    return Path(resources.files("eventqa")) / "data" / "sample_corpus.jsonl"


class Split(enum.Enum):
    TRAIN = "train"
    DEV = "dev"
    TEST = "test"


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    split_tag: Split = Split.TEST

    def sentences(self) -> list[Sentence]:
        return [s for doc in self.documents for s in doc.sentences]

    def sentence_index(self) -> dict[tuple[str, str], Sentence]:
        return {(s.doc_id, s.sent_id): s for s in self.sentences()}


@dataclass(frozen=True)
class RoleSplit:
    seen_roles: frozenset[str]
    unseen_roles: frozenset[str]

    @classmethod
    def from_unseen(cls, ont: EventOntology, unseen: set[str]) -> "RoleSplit":
        all_roles = ont.role_names
        unseen = frozenset(unseen)
        if not unseen:
            raise CorpusError("unseen role set is empty")
        unknown = unseen - all_roles
        if unknown:
            raise CorpusError(f"unseen roles not in the ontology: {sorted(unknown)}")
        if unseen == all_roles:
            raise CorpusError("unseen role set covers every role; nothing is left to train on")
        return cls(seen_roles=frozenset(all_roles - unseen), unseen_roles=unseen)


def _parse_event(entry: dict, where: str, ont: EventOntology) -> GoldEvent:
    for key in ("trigger_offset", "event_type"):
        if key not in entry:
            raise CorpusError(f"{where}: event record missing {key!r}")
    event_type = str(entry["event_type"])
    if not ont.has_type(event_type):
        raise CorpusError(f"{where}: unknown event type {event_type!r}")
    role_names = {r.role_name for r in lookup_roles(ont, event_type)}
    arguments = []
    for arg in entry.get("arguments") or []:
        missing = [k for k in ("role", "start", "end") if k not in arg]
        if missing:
            raise CorpusError(f"{where}: argument record missing fields {missing}")
        role = str(arg["role"])
        if role not in role_names:
            raise CorpusError(f"{where}: role {role!r} is not a role of {event_type}")
        start, end = int(arg["start"]), int(arg["end"])
        if start > end:
            raise CorpusError(f"{where}: argument span start {start} > end {end} for role {role!r}")
        arguments.append(GoldArgument(role_name=role, start=start, end=end))
    return GoldEvent(
        trigger_offset=int(entry["trigger_offset"]),
        event_type=event_type,
        arguments=tuple(arguments),
    )


def load_corpus(path: str | Path, ont: EventOntology, split: Split = Split.TEST) -> Corpus:
    """Parse and validate a corpus file; offsets and type/role names are checked."""
    docs: dict[str, list[Sentence]] = {}
    doc_order: list[str] = []
    seen_keys: set[tuple[str, str]] = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            where = f"{path}:{lineno}"
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusError(f"{where}: bad record: {e}") from e
            missing = [k for k in ("doc_id", "sent_id", "tokens") if k not in rec]
            if missing:
                raise CorpusError(f"{where}: sentence record missing fields {missing}")
            doc_id, sent_id = str(rec["doc_id"]), str(rec["sent_id"])
            where = f"{where} ({doc_id}/{sent_id})"
            if (doc_id, sent_id) in seen_keys:
                raise CorpusError(f"{where}: duplicate sentence id")
            seen_keys.add((doc_id, sent_id))
            events = tuple(_parse_event(e, where, ont) for e in rec.get("events") or [])
            try:
                sentence = Sentence(
                    doc_id=doc_id,
                    sent_id=sent_id,
                    tokens=tuple(str(t) for t in rec["tokens"]),
                    gold_events=events,
                )
            except ValueError as e:
                raise CorpusError(f"{where}: {e}") from e
            if doc_id not in docs:
                docs[doc_id] = []
                doc_order.append(doc_id)
            docs[doc_id].append(sentence)
    documents = tuple(Document(doc_id=d, sentences=tuple(docs[d])) for d in doc_order)
    return Corpus(documents=documents, split_tag=split)


def sentence_record(sentence: Sentence) -> dict:
    return {
        "doc_id": sentence.doc_id,
        "sent_id": sentence.sent_id,
        "tokens": list(sentence.tokens),
        "events": [
            {
                "trigger_offset": ev.trigger_offset,
                "event_type": ev.event_type,
                "arguments": [
                    {"role": a.role_name, "start": a.start, "end": a.end} for a in ev.arguments
                ],
            }
            for ev in sentence.gold_events
        ],
    }


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for sentence in corpus.sentences():
            f.write(json.dumps(sentence_record(sentence)) + "\n")


def gold_trigger_mentions(corpus: Corpus) -> list[TriggerMention]:
    return [
        TriggerMention(s.doc_id, s.sent_id, ev.trigger_offset, ev.event_type)
        for s in corpus.sentences()
        for ev in s.gold_events
    ]


def gold_arg_mentions(corpus: Corpus) -> list[ArgMention]:
    return [
        ArgMention(s.doc_id, s.sent_id, ev.event_type, a.role_name, a.start, a.end)
        for s in corpus.sentences()
        for ev in s.gold_events
        for a in ev.arguments
    ]


def gold_trigger_labels(sentence: Sentence, ont: EventOntology) -> list[int]:
    """Per-token gold type indices for the trigger loss (0 = no event)."""
    labels = [0] * len(sentence.tokens)
    for ev in sentence.gold_events:
        labels[ev.trigger_offset] = ont.type_index(ev.event_type)
    return labels


def _filter_documents(corpus: Corpus, keep) -> tuple[Document, ...]:
    out = []
    for doc in corpus.documents:
        kept = tuple(s for s in doc.sentences if keep(s))
        if kept:
            out.append(Document(doc_id=doc.doc_id, sentences=kept))
    return tuple(out)


def zero_shot_split(
    ont: EventOntology, unseen: set[str], corpus: Corpus
) -> tuple[Corpus, Corpus]:
    """Split into a train subset (sentences with at least one seen-role argument)
    and a test subset (sentences with at least one unseen-role argument).

    A sentence carrying both kinds of roles lands in both subsets.
    """
    split = RoleSplit.from_unseen(ont, unseen)

    def roles_of(sentence: Sentence) -> set[str]:
        return {a.role_name for ev in sentence.gold_events for a in ev.arguments}

    train_docs = _filter_documents(corpus, lambda s: roles_of(s) & split.seen_roles)
    test_docs = _filter_documents(corpus, lambda s: roles_of(s) & split.unseen_roles)
    return (
        Corpus(documents=train_docs, split_tag=Split.TRAIN),
        Corpus(documents=test_docs, split_tag=Split.TEST),
    )
