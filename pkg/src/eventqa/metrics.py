"""Scoring under the four standard criteria: trigger/argument ID and ID+classification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .arguments import ArgCandidate
    from .triggers import TriggerPrediction

BLOCK_NAMES = ("trigger_id", "trigger_idc", "arg_id", "arg_idc")

BLOCK_LABELS = {
    "trigger_id": "Trigger ID",
    "trigger_idc": "Trigger ID+C",
    "arg_id": "Argument ID",
    "arg_idc": "Argument ID+C",
}


@dataclass(frozen=True)
class TriggerMention:
    doc_id: str
    sent_id: str
    token_offset: int
    event_type: str


@dataclass(frozen=True)
class ArgMention:
    doc_id: str
    sent_id: str
    event_type: str
    role_name: str
    start: int
    end: int


@dataclass(frozen=True)
class Counts:
    num_pred: int = 0
    num_gold: int = 0
    num_correct: int = 0

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(
            self.num_pred + other.num_pred,
            self.num_gold + other.num_gold,
            self.num_correct + other.num_correct,
        )

    def prf(self) -> tuple[float, float, float]:
        """Precision/recall/F1 as percentages; empty denominators score 0."""
        p = 100.0 * self.num_correct / self.num_pred if self.num_pred else 0.0
        r = 100.0 * self.num_correct / self.num_gold if self.num_gold else 0.0
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return p, r, f1


def match_counts(pred_keys: list, gold_keys: list) -> Counts:
    """One-to-one credit: each gold key is consumable by at most one prediction."""
    pred_counter = Counter(pred_keys)
    gold_counter = Counter(gold_keys)
    correct = sum(min(n, gold_counter[k]) for k, n in pred_counter.items())
    return Counts(num_pred=len(pred_keys), num_gold=len(gold_keys), num_correct=correct)


# Triggers match within their sentence; arguments match any reference mention of
# the same document whose sentence-local offsets (and event type) agree.
def trigger_id_key(m: TriggerMention) -> tuple:
    return (m.doc_id, m.sent_id, m.token_offset)


def trigger_idc_key(m: TriggerMention) -> tuple:
    return (m.doc_id, m.sent_id, m.token_offset, m.event_type)


def arg_id_key(m) -> tuple:
    return (m.doc_id, m.start, m.end, m.event_type)


def arg_idc_key(m) -> tuple:
    return (m.doc_id, m.start, m.end, m.event_type, m.role_name)


def score_triggers(
    preds: list[TriggerMention], gold: list[TriggerMention]
) -> tuple[Counts, Counts]:
    id_counts = match_counts([trigger_id_key(m) for m in preds], [trigger_id_key(m) for m in gold])
    idc_counts = match_counts(
        [trigger_idc_key(m) for m in preds], [trigger_idc_key(m) for m in gold]
    )
    return id_counts, idc_counts


def score_arguments(preds: list[ArgMention], gold: list[ArgMention]) -> tuple[Counts, Counts]:
    id_counts = match_counts([arg_id_key(m) for m in preds], [arg_id_key(m) for m in gold])
    idc_counts = match_counts([arg_idc_key(m) for m in preds], [arg_idc_key(m) for m in gold])
    return id_counts, idc_counts


@dataclass(frozen=True)
class MetricBlock:
    precision: float
    recall: float
    f1: float
    counts: Counts

    @classmethod
    def from_counts(cls, counts: Counts) -> "MetricBlock":
        p, r, f1 = counts.prf()
        return cls(precision=p, recall=r, f1=f1, counts=counts)


@dataclass(frozen=True)
class EvalReport:
    trigger_id: MetricBlock
    trigger_idc: MetricBlock
    arg_id: MetricBlock
    arg_idc: MetricBlock

    def blocks(self) -> list[tuple[str, MetricBlock]]:
        return [(name, getattr(self, name)) for name in BLOCK_NAMES]


def aggregate(per_unit_counts: Iterable[dict[str, Counts]]) -> EvalReport:
    """Micro-average: pool the raw counts, then compute P/R/F1 once."""
    totals = {name: Counts() for name in BLOCK_NAMES}
    for unit in per_unit_counts:
        for name, counts in unit.items():
            totals[name] = totals[name] + counts
    return EvalReport(**{name: MetricBlock.from_counts(totals[name]) for name in BLOCK_NAMES})


class PredictionSet:
    """Decoded triggers and kept argument candidates for a corpus.

    Duplicate trigger entries (same sentence, offset, and type) and duplicate
    argument tuples are collapsed on construction.
    """

    def __init__(
        self,
        triggers: dict[tuple[str, str], list["TriggerPrediction"]],
        arguments: list["ArgCandidate"],
    ):
        self.triggers: dict[tuple[str, str], list] = {}
        for (doc_id, sent_id), preds in triggers.items():
            seen = set()
            kept = []
            for p in preds:
                key = (p.token_offset, p.event_type)
                if key not in seen:
                    seen.add(key)
                    kept.append(p)
            self.triggers[(doc_id, sent_id)] = kept
        self.arguments: list = []
        seen_args = set()
        for c in arguments:
            key = (c.doc_id, c.sent_id, c.event_type, c.role_name, c.start, c.end)
            if key not in seen_args:
                seen_args.add(key)
                self.arguments.append(c)

    def trigger_mentions(self) -> list[TriggerMention]:
        return [
            TriggerMention(doc_id, sent_id, p.token_offset, p.event_type)
            for (doc_id, sent_id), preds in self.triggers.items()
            for p in preds
        ]

    def argument_mentions(self) -> list[ArgMention]:
        return [
            ArgMention(c.doc_id, c.sent_id, c.event_type, c.role_name, c.start, c.end)
            for c in self.arguments
        ]


def evaluate_mentions(
    pred_triggers: list[TriggerMention],
    gold_triggers: list[TriggerMention],
    pred_args: list[ArgMention],
    gold_args: list[ArgMention],
) -> EvalReport:
    tid, tidc = score_triggers(pred_triggers, gold_triggers)
    aid, aidc = score_arguments(pred_args, gold_args)
    return aggregate([{"trigger_id": tid, "trigger_idc": tidc, "arg_id": aid, "arg_idc": aidc}])


def render_report(report: EvalReport) -> str:
    lines = ["-" * 72]
    for name, block in report.blocks():
        c = block.counts
        lines.append(
            f"{BLOCK_LABELS[name]:<14} P: {block.precision:6.2f} ({c.num_correct}/{c.num_pred})"
            f"  R: {block.recall:6.2f} ({c.num_correct}/{c.num_gold})"
            f"  F1: {block.f1:6.2f}"
        )
    lines.append("-" * 72)
    return "\n".join(lines)


def report_rows(report: EvalReport) -> list[dict]:
    rows = []
    for name, block in report.blocks():
        c = block.counts
        rows.append(
            {
                "block": name,
                "precision": f"{block.precision:.2f}",
                "recall": f"{block.recall:.2f}",
                "f1": f"{block.f1:.2f}",
                "num_pred": c.num_pred,
                "num_gold": c.num_gold,
                "num_correct": c.num_correct,
            }
        )
    return rows
