from __future__ import annotations

import random

import pytest

from eventqa.questions import Question
from eventqa.sequences import GoldArgument, GoldEvent, Sentence, encode


def make_sentence(tokens, events=()):
    return Sentence(doc_id="d", sent_id="s", tokens=tuple(tokens), gold_events=tuple(events))


def test_encode_layout():
    seq = encode(Question(text="action"), make_sentence(["Taxes", "rose", "."]))
    assert list(seq.items) == ["[CLS]", "action", "[SEP]", "Taxes", "rose", ".", "[SEP]"]
    assert seq.cls_index == 0
    assert seq.sentence_span == (3, 5)
    assert seq.to_sentence(3) == 0


def test_encode_empty_question():
    seq = encode(Question(text=""), make_sentence(["Taxes", "rose", "."]))
    assert list(seq.items) == ["[CLS]", "[SEP]", "Taxes", "rose", ".", "[SEP]"]
    assert seq.sentence_span == (2, 4)


def test_multiword_question_tokenized_on_whitespace():
    seq = encode(Question(text="What is the artifact in sale?"), make_sentence(["a", "b"]))
    assert list(seq.items[1:7]) == ["What", "is", "the", "artifact", "in", "sale?"]


def test_round_trip_and_length():
    rng = random.Random(7)
    words = ["alpha", "beta", "gamma", "delta", "x?", "42"]
    for _ in range(50):
        q_tokens = [rng.choice(words) for _ in range(rng.randint(0, 6))]
        s_tokens = [rng.choice(words) for _ in range(rng.randint(1, 12))]
        seq = encode(Question(text=" ".join(q_tokens)), make_sentence(s_tokens))
        assert len(seq.items) == len(q_tokens) + len(s_tokens) + 3
        offsets = []
        for pos in seq.sentence_positions():
            off = seq.to_sentence(pos)
            assert seq.items[pos] == s_tokens[off]
            offsets.append(off)
        assert offsets == sorted(set(offsets))  # strictly increasing, full cover
        assert offsets == list(range(len(s_tokens)))


def test_trigger_offset_metadata():
    seq = encode(Question(text="verb"), make_sentence(["a", "b", "c"]), trigger_offset=1)
    assert seq.trigger_offset == 1


def test_sentence_rejects_empty_tokens():
    with pytest.raises(ValueError):
        make_sentence([])
    with pytest.raises(ValueError):
        make_sentence(["ok", ""])


def test_sentence_rejects_out_of_range_gold():
    with pytest.raises(ValueError, match="trigger offset"):
        make_sentence(["a", "b"], [GoldEvent(trigger_offset=2, event_type="T")])
    bad_arg = GoldEvent(
        trigger_offset=0, event_type="T", arguments=(GoldArgument("R", 1, 2),)
    )
    with pytest.raises(ValueError, match="argument span"):
        make_sentence(["a", "b"], [bad_arg])
