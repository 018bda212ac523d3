"""Run inference over a request batch and emit probability-file records."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

import numpy as np
import torch

from .align import align_sequence
from .models import AdapterModels
from .requests import AdapterRequest

log = logging.getLogger(__name__)


def _softmax(logits: np.ndarray, axis: int = -1) -> np.ndarray:
    shifted = logits - logits.max(axis=axis, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=axis, keepdims=True)


def _skipped_record(req: AdapterRequest, reason: str) -> dict:
    return {"kind": req.kind, **req.key_fields(), "skipped": reason}


def _trigger_record(req: AdapterRequest, models: AdapterModels) -> dict:
    alignment = align_sequence(models.trigger_tokenizer, req.question, req.tokens)
    if len(alignment.piece_ids) > models.max_pieces:
        log.warning("skipping over-length trigger request %s/%s", req.doc_id, req.sent_id)
        return _skipped_record(req, "over_length")
    ids = torch.tensor([alignment.piece_ids], device=models.device)
    with torch.no_grad():
        logits = models.trigger_model(input_ids=ids).logits[0]
    per_piece = _softmax(logits.cpu().numpy().astype(np.float64))
    # first-piece selection: a multi-piece token is represented by its first piece
    first = alignment.first_pieces
    rows = [per_piece[first[slot]] for slot in alignment.sentence_slots]
    return {
        "kind": "trigger",
        **req.key_fields(),
        "probs": [[float(p) for p in row] for row in rows],
    }


def _argument_record(req: AdapterRequest, models: AdapterModels) -> dict:
    alignment = align_sequence(models.argument_tokenizer, req.question, req.tokens)
    if len(alignment.piece_ids) > models.max_pieces:
        log.warning(
            "skipping over-length argument request %s/%s role=%s",
            req.doc_id,
            req.sent_id,
            req.role_name,
        )
        return _skipped_record(req, "over_length")
    ids = torch.tensor([alignment.piece_ids], device=models.device)
    with torch.no_grad():
        out = models.argument_model(input_ids=ids)
    vectors = {}
    for name, logits in (("start", out.start_logits[0]), ("end", out.end_logits[0])):
        per_piece = _softmax(logits.cpu().numpy().astype(np.float64))
        aggregated = per_piece[alignment.first_pieces]
        aggregated = aggregated / aggregated.sum()  # restore stochasticity
        vectors[name] = [float(p) for p in aggregated]
    return {"kind": "argument", **req.key_fields(), **vectors}


def infer_batch(batch: list[AdapterRequest], models: AdapterModels) -> list[dict]:
    """One output record per request; over-length requests yield sentinel records."""
    records = []
    for req in batch:
        if req.kind == "trigger":
            records.append(_trigger_record(req, models))
        else:
            records.append(_argument_record(req, models))
    return records


def write_records(records: list[dict], path: str | Path) -> None:
    """Write-temp-then-rename so readers never observe a partial file."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec) + "\n")
    os.replace(tmp, path)
