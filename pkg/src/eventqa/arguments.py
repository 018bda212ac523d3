"""Argument span decoding: candidate harvesting, no-answer thresholding, and loss."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .metrics import ArgMention, arg_idc_key, match_counts
from .providers import ProbRequest, SpanProbs
from .sequences import EncodedSequence

NO_THRESHOLD = float("-inf")  # sentinel: keep nothing


class DecodeMode(enum.Enum):
    DYNAMIC_THRESHOLD = "threshold"
    ZERO_RULE = "zero"


@dataclass(frozen=True)
class DecodeConfig:
    max_span_length: int = 10
    mode: DecodeMode = DecodeMode.DYNAMIC_THRESHOLD

    def __post_init__(self) -> None:
        if self.max_span_length < 1:
            raise ValueError("max_span_length must be >= 1")


@dataclass(frozen=True)
class ArgCandidate:
    doc_id: str
    sent_id: str
    event_type: str
    role_name: str
    trigger_offset: int
    start: int  # inclusive sentence token offsets
    end: int
    score: float
    no_ans_score: float


def harvest_candidates(
    sp: SpanProbs,
    seq: EncodedSequence,
    cfg: DecodeConfig,
    meta: ProbRequest,
) -> list[ArgCandidate]:
    """Enumerate spans whose boundary probabilities beat the [CLS] no-answer mass.

    A span survives iff both endpoints lie inside the sentence, start <= end,
    its length is at most max_span_length, and P_start(start) and P_end(end)
    are each >= the corresponding [CLS] probability. Every survivor is scored
    with score = P_start(start) + P_end(end) and
    no_ans_score = P_start([CLS]) + P_end([CLS]) - score.
    """
    if len(sp.start) != len(seq.items):
        raise ValueError(
            f"span vectors of length {len(sp.start)} for a sequence of length {len(seq.items)}"
        )
    first, last = seq.sentence_span
    ps, pe = sp.start, sp.end
    cls_total = float(ps[seq.cls_index] + pe[seq.cls_index])
    candidates = []
    for start in range(first, last + 1):
        if ps[start] < ps[seq.cls_index]:
            continue
        for end in range(start, min(last, start + cfg.max_span_length - 1) + 1):
            if pe[end] < pe[seq.cls_index]:
                continue
            score = float(ps[start] + pe[end])
            candidates.append(
                ArgCandidate(
                    doc_id=meta.doc_id,
                    sent_id=meta.sent_id,
                    event_type=meta.event_type,
                    role_name=meta.role_name,
                    trigger_offset=meta.trigger_offset,
                    start=seq.to_sentence(start),
                    end=seq.to_sentence(end),
                    score=score,
                    no_ans_score=cls_total - score,
                )
            )
    return candidates


@dataclass(frozen=True)
class ThresholdTable:
    per_role: dict[str, float] = field(default_factory=dict)
    fallback: float = NO_THRESHOLD

    def resolve(self, role_name: str) -> float:
        return self.per_role.get(role_name, self.fallback)


def _f1_among_kept(kept: list[ArgCandidate], gold: list[ArgMention]) -> Fraction:
    # exact rational F1: with P = c/k and R = c/g, 2PR/(P+R) reduces to 2c/(k+g)
    counts = match_counts([arg_idc_key(c) for c in kept], [arg_idc_key(g) for g in gold])
    total = counts.num_pred + counts.num_gold
    return Fraction(2 * counts.num_correct, total) if total else Fraction(0)


def _best_threshold(candidates: list[ArgCandidate], gold: list[ArgMention]) -> float:
    # Sweep the candidates' own no_ans_scores plus the keep-nothing sentinel;
    # F1 is piecewise constant between them. Ties go to the smallest threshold
    # (fewest kept candidates).
    best_thresh = NO_THRESHOLD
    best_f1 = Fraction(0)
    by_score = sorted(candidates, key=lambda c: c.no_ans_score)
    for thresh in sorted({c.no_ans_score for c in candidates}):
        kept = [c for c in by_score if c.no_ans_score <= thresh]
        f1 = _f1_among_kept(kept, gold)
        if f1 > best_f1:
            best_f1 = f1
            best_thresh = thresh
    return best_thresh


def calibrate_threshold(
    dev_candidates: list[ArgCandidate],
    dev_gold: list[ArgMention],
    per_role: bool = True,
) -> ThresholdTable:
    """Pick, per role, the no_ans_score cutoff that maximizes dev argument ID+C F1.

    Candidates are pooled by role name across event types. The fallback (used
    for roles with no dev candidates, and as the single threshold when
    per_role is off) is the best global cutoff over all candidates.
    """
    if not dev_gold:
        raise ValueError("dev gold is empty; cannot calibrate thresholds")
    fallback = _best_threshold(dev_candidates, dev_gold)
    if not per_role:
        return ThresholdTable(per_role={}, fallback=fallback)
    table = {}
    roles = sorted({c.role_name for c in dev_candidates})
    for role in roles:
        cands_r = [c for c in dev_candidates if c.role_name == role]
        gold_r = [g for g in dev_gold if g.role_name == role]
        table[role] = _best_threshold(cands_r, gold_r)
    return ThresholdTable(per_role=table, fallback=fallback)


def apply_threshold(
    test_candidates: list[ArgCandidate], table: ThresholdTable
) -> list[ArgCandidate]:
    return [c for c in test_candidates if c.no_ans_score <= table.resolve(c.role_name)]


def zero_rule(test_candidates: list[ArgCandidate]) -> list[ArgCandidate]:
    """Keep candidates scoring strictly below the no-answer option."""
    return [c for c in test_candidates if c.no_ans_score < 0.0]


def argument_nll(sp: SpanProbs, gold: tuple[int, int] | None) -> float:
    """Start loss plus end loss at the gold encoded positions; None means no answer
    and both losses are taken at the [CLS] position."""
    if gold is None:
        s = e = sp.cls_index
    else:
        s, e = gold
    for name, pos in (("start", s), ("end", e)):
        if not 0 <= pos < len(sp.start):
            raise ValueError(f"gold {name} position {pos} outside sequence of length {len(sp.start)}")
    p_s, p_e = float(sp.start[s]), float(sp.end[e])
    if p_s <= 0.0 or p_e <= 0.0:
        raise ValueError(f"zero probability at gold positions ({s}, {e})")
    return -math.log(p_s) - math.log(p_e)


def _encode_threshold(value: float) -> float | str:
    if value == float("-inf"):
        return "-inf"
    if value == float("inf"):
        return "inf"
    return value


def _decode_threshold(value) -> float:
    return float(value)


def save_threshold_table(table: ThresholdTable, path: str | Path) -> None:
    doc = {
        "fallback": _encode_threshold(table.fallback),
        "per_role": {role: _encode_threshold(v) for role, v in sorted(table.per_role.items())},
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_threshold_table(path: str | Path) -> ThresholdTable:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return ThresholdTable(
        per_role={role: _decode_threshold(v) for role, v in doc.get("per_role", {}).items()},
        fallback=_decode_threshold(doc.get("fallback", "-inf")),
    )
