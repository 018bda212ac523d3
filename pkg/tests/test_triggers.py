from __future__ import annotations

import math

import numpy as np
import pytest

from eventqa.providers import TriggerProbs
from eventqa.triggers import decode_triggers, trigger_nll

from .test_providers import tiny_ontology  # types: [None, A.One, B.Two]


def probs(rows):
    return TriggerProbs(per_token=np.array(rows, dtype=float))


def test_decode_argmax():
    preds = decode_triggers(probs([[0.8, 0.1, 0.1], [0.2, 0.7, 0.1]]), tiny_ontology())
    assert [(p.token_offset, p.event_type) for p in preds] == [(1, "A.One")]
    assert preds[0].prob == pytest.approx(0.7)


def test_decode_uniform_tie_yields_no_trigger():
    third = 1.0 / 3.0
    assert decode_triggers(probs([[third, third, third]]), tiny_ontology()) == []


def test_decode_tie_between_types_takes_lowest_index():
    preds = decode_triggers(probs([[0.1, 0.45, 0.45]]), tiny_ontology())
    assert [(p.token_offset, p.event_type) for p in preds] == [(0, "A.One")]


def test_decode_all_background_is_empty():
    assert decode_triggers(probs([[0.9, 0.05, 0.05], [0.8, 0.1, 0.1]]), tiny_ontology()) == []


def test_decode_offsets_increasing_and_bounded():
    rng = np.random.default_rng(3)
    for _ in range(50):
        raw = rng.random((rng.integers(1, 10), 3))
        preds = decode_triggers(probs(raw / raw.sum(axis=1, keepdims=True)), tiny_ontology())
        offsets = [p.token_offset for p in preds]
        assert offsets == sorted(set(offsets))
        assert all(0 <= o < raw.shape[0] for o in offsets)


def test_decode_scale_invariance():
    # scaling a row before renormalization cannot move the argmax
    rng = np.random.default_rng(4)
    for _ in range(50):
        raw = rng.random((4, 3)) + 1e-6
        base = probs(raw / raw.sum(axis=1, keepdims=True))
        scaled_raw = raw * rng.uniform(0.1, 10.0)
        scaled = probs(scaled_raw / scaled_raw.sum(axis=1, keepdims=True))
        choices = lambda preds: [(p.token_offset, p.event_type) for p in preds]
        assert choices(decode_triggers(base, tiny_ontology())) == choices(
            decode_triggers(scaled, tiny_ontology())
        )


def test_nll_half():
    assert trigger_nll(probs([[0.5, 0.25, 0.25]]), [0]) == pytest.approx(0.6931, abs=1e-4)


def test_nll_one_hot_is_zero():
    assert trigger_nll(probs([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]), [1, 0]) == 0.0


def test_nll_sums_over_tokens():
    value = trigger_nll(probs([[0.5, 0.3, 0.2], [0.25, 0.5, 0.25]]), [0, 0])
    assert value == pytest.approx(-math.log(0.5) - math.log(0.25), abs=1e-9)
    assert value == pytest.approx(2.0794, abs=1e-3)


def test_nll_zero_probability_reports_token():
    with pytest.raises(ValueError, match="token 0"):
        trigger_nll(probs([[0.0, 1.0, 0.0]]), [0])


def test_nll_label_count_mismatch():
    with pytest.raises(ValueError, match="labels"):
        trigger_nll(probs([[0.5, 0.25, 0.25]]), [0, 1])


def test_nll_nonnegative_random():
    rng = np.random.default_rng(9)
    for _ in range(30):
        raw = rng.random((5, 3)) + 1e-9
        p = probs(raw / raw.sum(axis=1, keepdims=True))
        labels = list(rng.integers(0, 3, size=5))
        assert trigger_nll(p, labels) >= 0.0
