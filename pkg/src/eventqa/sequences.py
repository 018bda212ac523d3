"""Model input sequences: [CLS] <question> [SEP] <sentence> [SEP] plus offset maps."""

from __future__ import annotations

from dataclasses import dataclass, field

from .questions import Question

CLS_TOKEN = "[CLS]"
SEP_TOKEN = "[SEP]"


@dataclass(frozen=True)
class GoldArgument:
    role_name: str
    start: int  # inclusive sentence token offsets
    end: int


@dataclass(frozen=True)
class GoldEvent:
    trigger_offset: int
    event_type: str
    arguments: tuple[GoldArgument, ...] = ()


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    sent_id: str
    tokens: tuple[str, ...]
    gold_events: tuple[GoldEvent, ...] = ()

    def __post_init__(self) -> None:
        if not self.tokens or any(not t for t in self.tokens):
            raise ValueError(f"{self.doc_id}/{self.sent_id}: tokens must be nonempty strings")
        n = len(self.tokens)
        for ev in self.gold_events:
            if not 0 <= ev.trigger_offset < n:
                raise ValueError(
                    f"{self.doc_id}/{self.sent_id}: trigger offset {ev.trigger_offset} out of range"
                )
            for arg in ev.arguments:
                if not 0 <= arg.start <= arg.end < n:
                    raise ValueError(
                        f"{self.doc_id}/{self.sent_id}: argument span "
                        f"({arg.start},{arg.end}) out of range for role {arg.role_name!r}"
                    )


@dataclass(frozen=True)
class EncodedSequence:
    items: tuple[str, ...]
    cls_index: int
    sentence_span: tuple[int, int]  # inclusive positions of sentence tokens
    to_sentence_offset: dict[int, int] = field(compare=False)
    trigger_offset: int | None = None  # sentence offset of the trigger the question refers to

    def __post_init__(self) -> None:
        if self.cls_index != 0 or not self.items:
            raise ValueError("sequence must start with the [CLS] position at index 0")
        first, last = self.sentence_span
        if not 0 < first <= last < len(self.items):
            raise ValueError(f"sentence span ({first}, {last}) outside sequence")
        previous = -1
        for pos in range(first, last + 1):
            offset = self.to_sentence_offset.get(pos)
            if offset is None or offset <= previous:
                raise ValueError("sentence offset map must cover the span, strictly increasing")
            previous = offset

    def __len__(self) -> int:
        return len(self.items)

    def sentence_positions(self) -> range:
        first, last = self.sentence_span
        return range(first, last + 1)

    def to_sentence(self, position: int) -> int:
        return self.to_sentence_offset[position]


def tokenize_question(text: str) -> list[str]:
    # whitespace split, punctuation kept attached; empty question -> no tokens
    return text.split()


def encode(question: Question, sentence: Sentence, trigger_offset: int | None = None) -> EncodedSequence:
    """Lay out [CLS] <question tokens> [SEP] <sentence tokens> [SEP]."""
    q_tokens = tokenize_question(question.text)
    items = [CLS_TOKEN, *q_tokens, SEP_TOKEN, *sentence.tokens, SEP_TOKEN]
    first = len(q_tokens) + 2
    last = first + len(sentence.tokens) - 1
    offset_map = {first + i: i for i in range(len(sentence.tokens))}
    return EncodedSequence(
        items=tuple(items),
        cls_index=0,
        sentence_span=(first, last),
        to_sentence_offset=offset_map,
        trigger_offset=trigger_offset,
    )
