"""Sources of model probabilities: gold-derived oracle, seeded random, file-backed."""

from __future__ import annotations

import enum
import hashlib
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .ontology import EventOntology
from .questions import ArgTemplateStrategy, argument_question
from .sequences import EncodedSequence, Sentence, encode

STOCHASTIC_TOL = 1e-6

# Oracle construction: the intended answer gets PEAK_MASS (split across gold
# spans for multi-span roles) and the remainder is spread uniformly over the
# other entries, so decoding paths see realistic non-zero probabilities.
PEAK_MASS = 0.99


class ProviderError(ValueError):
    """Missing or malformed probability data."""


class ProbKind(enum.Enum):
    TRIGGER = "trigger"
    ARGUMENT = "argument"


def _check_stochastic(vec: np.ndarray, what: str) -> None:
    if np.any(vec < 0.0) or np.any(vec > 1.0):
        raise ProviderError(f"{what}: entries outside [0, 1]")
    sums = vec.sum(axis=-1)
    if np.any(np.abs(sums - 1.0) > STOCHASTIC_TOL):
        raise ProviderError(f"{what}: does not sum to 1 (got {np.atleast_1d(sums)})")


@dataclass(frozen=True)
class TriggerProbs:
    """Per-sentence-token distribution over event types; column 0 = no event."""

    per_token: np.ndarray  # [num_tokens, num_types + 1]

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_token", np.asarray(self.per_token, dtype=float))
        if self.per_token.ndim != 2:
            raise ProviderError("trigger probabilities must be a 2-d matrix")
        _check_stochastic(self.per_token, "trigger probability row")


@dataclass(frozen=True)
class SpanProbs:
    """Start/end distributions over the full encoded sequence."""

    start: np.ndarray
    end: np.ndarray
    cls_index: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", np.asarray(self.start, dtype=float))
        object.__setattr__(self, "end", np.asarray(self.end, dtype=float))
        if self.start.shape != self.end.shape or self.start.ndim != 1:
            raise ProviderError("start/end must be 1-d vectors of equal length")
        _check_stochastic(self.start, "start vector")
        _check_stochastic(self.end, "end vector")


@dataclass(frozen=True)
class ProbRequest:
    doc_id: str
    sent_id: str
    kind: ProbKind
    event_type: str | None = None
    role_name: str | None = None
    trigger_offset: int | None = None
    strategy: ArgTemplateStrategy | None = None

    def __post_init__(self) -> None:
        if self.kind is ProbKind.ARGUMENT:
            missing = [
                name
                for name, value in (
                    ("event_type", self.event_type),
                    ("role_name", self.role_name),
                    ("trigger_offset", self.trigger_offset),
                    ("strategy", self.strategy),
                )
                if value is None
            ]
            if missing:
                raise ValueError(f"argument request missing fields: {missing}")

    @property
    def key(self) -> tuple:
        if self.kind is ProbKind.TRIGGER:
            return ("trigger", self.doc_id, self.sent_id)
        return (
            "argument",
            self.doc_id,
            self.sent_id,
            self.event_type,
            self.role_name,
            self.trigger_offset,
        )


class ProbProvider(ABC):
    """Read-only after construction; get_* calls are safe to run concurrently."""

    @abstractmethod
    def get_trigger_probs(self, req: ProbRequest) -> TriggerProbs: ...

    @abstractmethod
    def get_span_probs(self, req: ProbRequest) -> SpanProbs: ...


def _peaked_vector(length: int, peaks: dict[int, float]) -> np.ndarray:
    vec = np.zeros(length)
    for pos, mass in peaks.items():
        vec[pos] += mass
    rest = np.isclose(vec, 0.0)
    n_rest = int(rest.sum())
    if n_rest:
        vec[rest] = (1.0 - sum(peaks.values())) / n_rest
    return vec


class _SentenceLookupMixin:
    def __init__(self, sentences: dict[tuple[str, str], Sentence], ontology: EventOntology):
        self._sentences = dict(sentences)
        self._ontology = ontology

    def _sentence(self, req: ProbRequest) -> Sentence:
        try:
            return self._sentences[(req.doc_id, req.sent_id)]
        except KeyError:
            raise ProviderError(f"no sentence {req.doc_id}/{req.sent_id}") from None

    def _encode_for(self, req: ProbRequest, sentence: Sentence) -> EncodedSequence:
        spec = self._ontology.role_spec(req.event_type, req.role_name)
        trigger_token = sentence.tokens[req.trigger_offset] if req.strategy.append_trigger else None
        question = argument_question(spec, req.strategy, trigger_token)
        return encode(question, sentence, trigger_offset=req.trigger_offset)


class OracleProvider(_SentenceLookupMixin, ProbProvider):
    """Builds probabilities from gold annotations.

    A correct decoder must invert this provider exactly: trigger rows peak at
    the gold type (no-event column for other tokens), span vectors peak at the
    gold span boundaries, splitting the peak mass evenly when a role has
    several gold spans, and peak at [CLS] when the role has none. Tokens that
    trigger more than one gold event get the first event's type.
    """

    def get_trigger_probs(self, req: ProbRequest) -> TriggerProbs:
        sentence = self._sentence(req)
        n_types = len(self._ontology.event_types) + 1
        by_offset: dict[int, int] = {}
        for ev in sentence.gold_events:
            by_offset.setdefault(ev.trigger_offset, self._ontology.type_index(ev.event_type))
        rows = [
            _peaked_vector(n_types, {by_offset.get(i, 0): PEAK_MASS})
            for i in range(len(sentence.tokens))
        ]
        return TriggerProbs(per_token=np.stack(rows))

    def get_span_probs(self, req: ProbRequest) -> SpanProbs:
        sentence = self._sentence(req)
        seq = self._encode_for(req, sentence)
        first = seq.sentence_span[0]
        spans = [
            (arg.start, arg.end)
            for ev in sentence.gold_events
            if ev.trigger_offset == req.trigger_offset and ev.event_type == req.event_type
            for arg in ev.arguments
            if arg.role_name == req.role_name
        ]
        m = len(seq)
        if not spans:
            start_peaks = end_peaks = {seq.cls_index: PEAK_MASS}
        else:
            share = PEAK_MASS / len(spans)
            start_peaks: dict[int, float] = {}
            end_peaks: dict[int, float] = {}
            for s, e in spans:
                start_peaks[first + s] = start_peaks.get(first + s, 0.0) + share
                end_peaks[first + e] = end_peaks.get(first + e, 0.0) + share
        return SpanProbs(
            start=_peaked_vector(m, start_peaks),
            end=_peaked_vector(m, end_peaks),
            cls_index=seq.cls_index,
        )


class PseudorandomProvider(_SentenceLookupMixin, ProbProvider):
    """Seeded random stochastic vectors; identical requests get identical outputs."""

    def __init__(self, sentences, ontology, seed: int):
        super().__init__(sentences, ontology)
        self._seed = seed

    def _rng(self, req: ProbRequest) -> np.random.Generator:
        tag = req.strategy.tag if req.strategy is not None else ""
        material = f"{self._seed}|{'|'.join(str(k) for k in req.key)}|{tag}"
        digest = hashlib.sha256(material.encode()).digest()
        return np.random.default_rng(int.from_bytes(digest[:8], "big"))

    @staticmethod
    def _random_stochastic(rng: np.random.Generator, shape) -> np.ndarray:
        raw = rng.random(shape) + 1e-9
        return raw / raw.sum(axis=-1, keepdims=True)

    def get_trigger_probs(self, req: ProbRequest) -> TriggerProbs:
        sentence = self._sentence(req)
        rng = self._rng(req)
        shape = (len(sentence.tokens), len(self._ontology.event_types) + 1)
        return TriggerProbs(per_token=self._random_stochastic(rng, shape))

    def get_span_probs(self, req: ProbRequest) -> SpanProbs:
        sentence = self._sentence(req)
        seq = self._encode_for(req, sentence)
        rng = self._rng(req)
        m = len(seq)
        return SpanProbs(
            start=self._random_stochastic(rng, m),
            end=self._random_stochastic(rng, m),
            cls_index=seq.cls_index,
        )


def trigger_record(doc_id: str, sent_id: str, per_token) -> dict:
    return {
        "kind": "trigger",
        "doc_id": doc_id,
        "sent_id": sent_id,
        "probs": [[float(p) for p in row] for row in per_token],
    }


def argument_record(
    doc_id: str,
    sent_id: str,
    event_type: str,
    role_name: str,
    trigger_offset: int,
    start,
    end,
) -> dict:
    return {
        "kind": "argument",
        "doc_id": doc_id,
        "sent_id": sent_id,
        "event_type": event_type,
        "role_name": role_name,
        "trigger_offset": int(trigger_offset),
        "start": [float(p) for p in start],
        "end": [float(p) for p in end],
    }


def write_prob_file(records, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec) + "\n")


class FileProvider(ProbProvider):
    """Reads probability records from a JSONL file (schema in docs/formats.md).

    All records are loaded and validated up front; lookups afterwards are
    read-only, so concurrent use is safe.
    """

    def __init__(self, path: str | Path):
        self._path = str(path)
        self._triggers: dict[tuple, TriggerProbs] = {}
        self._spans: dict[tuple, SpanProbs] = {}
        self._skipped: dict[tuple, str] = {}
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as e:
                    raise ProviderError(f"{path}:{lineno}: bad record: {e}") from e
                self._add_record(rec, lineno)

    def _add_record(self, rec: dict, lineno: int) -> None:
        where = f"{self._path}:{lineno}"
        kind = rec.get("kind")
        if kind == "trigger":
            key = ("trigger", rec["doc_id"], rec["sent_id"])
        elif kind == "argument":
            key = (
                "argument",
                rec["doc_id"],
                rec["sent_id"],
                rec["event_type"],
                rec["role_name"],
                int(rec["trigger_offset"]),
            )
        else:
            raise ProviderError(f"{where}: unknown record kind {kind!r}")
        if rec.get("skipped"):
            self._skipped[key] = str(rec["skipped"])
            return
        try:
            if kind == "trigger":
                self._triggers[key] = TriggerProbs(per_token=np.array(rec["probs"], dtype=float))
            else:
                self._spans[key] = SpanProbs(
                    start=np.array(rec["start"], dtype=float),
                    end=np.array(rec["end"], dtype=float),
                    cls_index=int(rec.get("cls_index", 0)),
                )
        except (ProviderError, KeyError, ValueError) as e:
            raise ProviderError(f"{where}: {e}") from e

    def _missing(self, req: ProbRequest) -> ProviderError:
        key = req.key
        if key in self._skipped:
            return ProviderError(f"record for {key} was skipped by the adapter: {self._skipped[key]}")
        return ProviderError(f"no record for {key} in {self._path}")

    def get_trigger_probs(self, req: ProbRequest) -> TriggerProbs:
        probs = self._triggers.get(req.key)
        if probs is None:
            raise self._missing(req)
        return probs

    def get_span_probs(self, req: ProbRequest) -> SpanProbs:
        sp = self._spans.get(req.key)
        if sp is None:
            raise self._missing(req)
        return sp
