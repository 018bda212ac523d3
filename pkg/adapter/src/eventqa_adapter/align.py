"""Sub-word alignment between the atomic [CLS] q [SEP] s [SEP] layout and wordpieces."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TokenAlignment:
    """Wordpiece encoding of an atomic sequence.

    piece_ids is the model input; piece_spans[i] = (begin, end) is the
    half-open wordpiece range of atomic position i. Every atomic position is
    covered by at least one piece and the spans are contiguous in order.
    sentence_slots are the atomic positions of the sentence tokens.
    """

    piece_ids: tuple[int, ...]
    piece_spans: tuple[tuple[int, int], ...]
    sentence_slots: tuple[int, ...]

    def __post_init__(self) -> None:
        cursor = 0
        for begin, end in self.piece_spans:
            if begin != cursor or end <= begin:
                raise ValueError(f"non-contiguous piece span ({begin}, {end}) at {cursor}")
            cursor = end
        if cursor != len(self.piece_ids):
            raise ValueError("piece spans do not cover the whole sequence")

    @property
    def first_pieces(self) -> list[int]:
        return [begin for begin, _ in self.piece_spans]

    def __len__(self) -> int:
        return len(self.piece_spans)


def align_sequence(tokenizer, question: str, sentence_tokens: tuple[str, ...]) -> TokenAlignment:
    """Encode [CLS] <question tokens> [SEP] <sentence tokens> [SEP] as wordpieces.

    Question tokens are whitespace-split, matching the consumer's atomic
    layout. A token the vocabulary cannot cover becomes a single [UNK] piece.
    """
    unk = tokenizer.unk_token
    pieces: list[str] = []
    spans: list[tuple[int, int]] = []

    def push(piece_list: list[str]) -> None:
        begin = len(pieces)
        pieces.extend(piece_list if piece_list else [unk])
        spans.append((begin, len(pieces)))

    push([tokenizer.cls_token])
    question_tokens = question.split()
    for tok in question_tokens:
        push(tokenizer.tokenize(tok))
    push([tokenizer.sep_token])
    first_sentence_slot = len(spans)
    for tok in sentence_tokens:
        push(tokenizer.tokenize(tok))
    push([tokenizer.sep_token])

    return TokenAlignment(
        piece_ids=tuple(tokenizer.convert_tokens_to_ids(pieces)),
        piece_spans=tuple(spans),
        sentence_slots=tuple(range(first_sentence_slot, first_sentence_slot + len(sentence_tokens))),
    )
