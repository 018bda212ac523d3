from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest
import torch
from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import BertNormalizer
from tokenizers.pre_tokenizers import BertPreTokenizer
from transformers import (
    BertConfig,
    BertForQuestionAnswering,
    BertForTokenClassification,
    BertTokenizerFast,
)

from eventqa.corpus import sample_corpus_path
from eventqa.ontology import load_default_ontology

# tiny wordpiece vocabulary: everything else becomes [UNK];
# "transported" splits into three pieces to exercise aggregation
VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "trans", "##port", "##ed", "##ing",
    "what", "who", "where", "is", "the", "in", "a", "an", "of", "to",
    "police", "company", "agency", "met", "died", "killed",
]

TINY = dict(
    hidden_size=32,
    num_hidden_layers=2,
    num_attention_heads=2,
    intermediate_size=64,
    max_position_embeddings=48,
)


def make_tokenizer() -> BertTokenizerFast:
    core = Tokenizer(WordPiece({w: i for i, w in enumerate(VOCAB)}, unk_token="[UNK]"))
    core.normalizer = BertNormalizer(lowercase=True)
    core.pre_tokenizer = BertPreTokenizer()
    return BertTokenizerFast(
        tokenizer_object=core,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )


def build_model_root(root: Path) -> Path:
    tokenizer = make_tokenizer()
    torch.manual_seed(1234)
    # trigger tagger: label 0 is the no-event column, then the schema's types
    labels = ["None"] + load_default_ontology().type_names
    trigger_cfg = BertConfig(
        vocab_size=len(VOCAB),
        num_labels=len(labels),
        id2label=dict(enumerate(labels)),
        label2id={name: i for i, name in enumerate(labels)},
        **TINY,
    )
    trigger_dir = root / "trigger"
    BertForTokenClassification(trigger_cfg).save_pretrained(trigger_dir)
    tokenizer.save_pretrained(trigger_dir)
    argument_cfg = BertConfig(vocab_size=len(VOCAB), **TINY)
    argument_dir = root / "argument"
    BertForQuestionAnswering(argument_cfg).save_pretrained(argument_dir)
    tokenizer.save_pretrained(argument_dir)
    return root


@pytest.fixture(scope="session")
def model_root(tmp_path_factory) -> Path:
    return build_model_root(tmp_path_factory.mktemp("models"))


@pytest.fixture(scope="session")
def models(model_root):
    from eventqa_adapter.models import load_models

    return load_models(model_root)


@pytest.fixture(scope="session")
def requests_path(tmp_path_factory) -> Path:
    """Request batch produced by the primary CLI over its sample corpus."""
    out = tmp_path_factory.mktemp("requests") / "requests.jsonl"
    subprocess.run(
        [
            sys.executable, "-m", "eventqa.cli",
            "export-requests",
            "--corpus", str(sample_corpus_path()),
            "--out", str(out),
        ],
        check=True,
        capture_output=True,
    )
    return out
