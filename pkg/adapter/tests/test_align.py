from __future__ import annotations

import pytest

from eventqa_adapter.align import TokenAlignment, align_sequence

from .conftest import make_tokenizer


def test_multi_piece_word():
    tokenizer = make_tokenizer()
    alignment = align_sequence(tokenizer, "what is the", ("transported",))
    # atomic layout: [CLS] what is the [SEP] transported [SEP]
    assert len(alignment) == 7
    slot = alignment.sentence_slots[0]
    begin, end = alignment.piece_spans[slot]
    assert end - begin == 3  # trans ##port ##ed


def test_unknown_word_becomes_single_unk():
    tokenizer = make_tokenizer()
    alignment = align_sequence(tokenizer, "what", ("zzgreeble",))
    slot = alignment.sentence_slots[0]
    begin, end = alignment.piece_spans[slot]
    assert end - begin == 1
    assert alignment.piece_ids[begin] == tokenizer.convert_tokens_to_ids(tokenizer.unk_token)


def test_atomic_length_matches_consumer_layout():
    tokenizer = make_tokenizer()
    question = "who is the agent in met?"
    tokens = ("police", "met", "the", "agency", ".")
    alignment = align_sequence(tokenizer, question, tokens)
    assert len(alignment) == len(question.split()) + len(tokens) + 3
    assert len(alignment.sentence_slots) == len(tokens)


def test_empty_question():
    tokenizer = make_tokenizer()
    alignment = align_sequence(tokenizer, "", ("police",))
    assert len(alignment) == 4  # [CLS] [SEP] police [SEP]
    assert alignment.sentence_slots == (2,)


def test_spans_cover_and_are_contiguous():
    tokenizer = make_tokenizer()
    alignment = align_sequence(
        tokenizer, "what is transported", ("the", "company", "transported", "cargo", ".")
    )
    covered = [p for begin, end in alignment.piece_spans for p in range(begin, end)]
    assert covered == list(range(len(alignment.piece_ids)))


def test_alignment_validation():
    with pytest.raises(ValueError, match="contiguous"):
        TokenAlignment(piece_ids=(1, 2, 3), piece_spans=((0, 1), (2, 3)), sentence_slots=())
    with pytest.raises(ValueError, match="cover"):
        TokenAlignment(piece_ids=(1, 2, 3), piece_spans=((0, 1), (1, 2)), sentence_slots=())
