"""Loading the two fine-tuned models: a trigger tagger and an argument span scorer."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import torch
from transformers import (
    AutoTokenizer,
    BertForQuestionAnswering,
    BertForTokenClassification,
)


class ModelLoadError(RuntimeError):
    pass


@dataclass
class AdapterModels:
    """Model handles; the two models are independent (weights are not shared).

    Trigger label columns follow the model's id2label order: index 0 is the
    no-event label, the rest must match the consumer's event type order.
    """

    trigger_model: BertForTokenClassification
    trigger_tokenizer: object
    argument_model: BertForQuestionAnswering
    argument_tokenizer: object
    device: torch.device

    @property
    def max_pieces(self) -> int:
        return min(
            self.trigger_model.config.max_position_embeddings,
            self.argument_model.config.max_position_embeddings,
        )


def load_models(model_root: str | Path, device: str = "cpu") -> AdapterModels:
    """model_root holds two sub-directories, `trigger/` and `argument/`."""
    root = Path(model_root)
    trigger_dir = root / "trigger"
    argument_dir = root / "argument"
    for d in (trigger_dir, argument_dir):
        if not d.is_dir():
            raise ModelLoadError(f"model directory {d} not found")
    try:
        dev = torch.device(device)
        trigger_model = BertForTokenClassification.from_pretrained(trigger_dir).to(dev).eval()
        argument_model = BertForQuestionAnswering.from_pretrained(argument_dir).to(dev).eval()
        trigger_tokenizer = AutoTokenizer.from_pretrained(trigger_dir)
        argument_tokenizer = AutoTokenizer.from_pretrained(argument_dir)
    except (OSError, ValueError) as e:
        raise ModelLoadError(f"cannot load models from {root}: {e}") from e
    return AdapterModels(
        trigger_model=trigger_model,
        trigger_tokenizer=trigger_tokenizer,
        argument_model=argument_model,
        argument_tokenizer=argument_tokenizer,
        device=dev,
    )
