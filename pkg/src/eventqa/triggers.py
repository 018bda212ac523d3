"""Per-token trigger decoding and the trigger model loss."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ontology import EventOntology
from .providers import TriggerProbs


@dataclass(frozen=True)
class TriggerPrediction:
    token_offset: int
    event_type: str
    prob: float


def decode_triggers(probs: TriggerProbs, ont: EventOntology) -> list[TriggerPrediction]:
    """Argmax over types per token; tokens whose argmax is the no-event column are skipped.

    Ties resolve to the lowest column index, so a tie involving the no-event
    column yields no trigger.
    """
    preds = []
    for offset, row in enumerate(probs.per_token):
        label = int(np.argmax(row))
        if label == 0:
            continue
        preds.append(
            TriggerPrediction(
                token_offset=offset,
                event_type=ont.event_types[label - 1].name,
                prob=float(row[label]),
            )
        )
    return preds


def trigger_nll(probs: TriggerProbs, gold_labels: list[int]) -> float:
    """Negative log-likelihood of the gold type indices (0 = no event)."""
    if len(gold_labels) != probs.per_token.shape[0]:
        raise ValueError(
            f"got {len(gold_labels)} gold labels for {probs.per_token.shape[0]} tokens"
        )
    total = 0.0
    for i, label in enumerate(gold_labels):
        if not 0 <= label < probs.per_token.shape[1]:
            raise ValueError(f"token {i}: gold label {label} out of range")
        p = probs.per_token[i, label]
        if p <= 0.0:
            raise ValueError(f"token {i}: zero probability at gold label {label}")
        total -= math.log(p)
    return total
