from __future__ import annotations

from pathlib import Path

import pytest

from eventqa.corpus import load_corpus, sample_corpus_path
from eventqa.ontology import load_default_ontology
from eventqa.sequences import CLS_TOKEN, SEP_TOKEN, EncodedSequence

TESTS_DIR = Path(__file__).parent


@pytest.fixture(scope="session")
def ontology():
    return load_default_ontology()


@pytest.fixture(scope="session")
def fixture_corpus(ontology):
    return load_corpus(sample_corpus_path(), ontology)


def make_sequence(n_question: int, n_sentence: int) -> EncodedSequence:
    """Hand-built [CLS] q.. [SEP] w.. [SEP] sequence for decoder tests."""
    items = [CLS_TOKEN] + [f"q{i}" for i in range(n_question)] + [SEP_TOKEN]
    first = len(items)
    items += [f"w{i}" for i in range(n_sentence)] + [SEP_TOKEN]
    return EncodedSequence(
        items=tuple(items),
        cls_index=0,
        sentence_span=(first, first + n_sentence - 1),
        to_sentence_offset={first + i: i for i in range(n_sentence)},
    )


def brute_force_spans(ps, pe, seq: EncodedSequence, max_span_length: int):
    """Reference enumerator for span harvesting: check every (start, end) pair
    against the written constraints. Deliberately naive."""
    first, last = seq.sentence_span
    cls = seq.cls_index
    found = []
    for s in range(len(ps)):
        for e in range(len(pe)):
            if not (first <= s <= last) or not (first <= e <= last):
                continue
            if s > e:
                continue
            if e - s + 1 > max_span_length:
                continue
            if ps[s] < ps[cls] or pe[e] < pe[cls]:
                continue
            score = ps[s] + pe[e]
            found.append(
                (
                    seq.to_sentence_offset[s],
                    seq.to_sentence_offset[e],
                    score,
                    ps[cls] + pe[cls] - score,
                )
            )
    return found


def random_span_instance(rng, max_m: int = 12):
    """Random stochastic start/end vectors over a random small sequence layout."""
    n_sentence = int(rng.integers(1, max_m - 3 + 1))
    n_question = int(rng.integers(0, max_m - 3 - n_sentence + 1))
    seq = make_sequence(n_question, n_sentence)
    m = len(seq.items)
    start = rng.random(m) + 1e-9
    end = rng.random(m) + 1e-9
    return start / start.sum(), end / end.sum(), seq


def assert_candidate_sets_equal(candidates, expected, tol: float = 1e-12):
    got = sorted((c.start, c.end, c.score, c.no_ans_score) for c in candidates)
    want = sorted(expected)
    assert len(got) == len(want), f"{len(got)} candidates, expected {len(want)}"
    for g, w in zip(got, want):
        assert g[:2] == w[:2], (g, w)
        assert abs(g[2] - w[2]) <= tol, (g, w)
        assert abs(g[3] - w[3]) <= tol, (g, w)
