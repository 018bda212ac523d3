"""End-to-end orchestration: decode triggers, ask role questions, harvest and filter spans."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .arguments import (
    ArgCandidate,
    DecodeConfig,
    DecodeMode,
    ThresholdTable,
    apply_threshold,
    calibrate_threshold,
    harvest_candidates,
    save_threshold_table,
    zero_rule,
)
from .corpus import Corpus, gold_arg_mentions, gold_trigger_mentions, sentence_record
from .metrics import EvalReport, PredictionSet, evaluate_mentions
from .ontology import EventOntology, TriggerStrategy, lookup_roles
from .providers import (
    FileProvider,
    OracleProvider,
    ProbKind,
    ProbProvider,
    ProbRequest,
    PseudorandomProvider,
)
from .questions import ArgTemplateStrategy, argument_question, trigger_question
from .sequences import Sentence, encode
from .triggers import TriggerPrediction, decode_triggers


class PipelineError(ValueError):
    """Configuration or data errors surfaced while running the pipeline."""


@dataclass(frozen=True)
class ProviderSpec:
    kind: str  # oracle | random | file
    seed: int | None = None
    path: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("oracle", "random", "file"):
            raise PipelineError(f"unknown provider kind {self.kind!r}")
        if self.kind == "random" and self.seed is None:
            raise PipelineError("random provider requires a seed")
        if self.kind == "file" and not self.path:
            raise PipelineError("file provider requires a probability file path")


def make_provider(spec: ProviderSpec, corpus: Corpus, ont: EventOntology) -> ProbProvider:
    if spec.kind == "oracle":
        return OracleProvider(corpus.sentence_index(), ont)
    if spec.kind == "random":
        return PseudorandomProvider(corpus.sentence_index(), ont, seed=spec.seed)
    if not Path(spec.path).exists():
        raise PipelineError(f"probability file {spec.path} does not exist")
    return FileProvider(spec.path)


@dataclass(frozen=True)
class RunConfig:
    ontology_path: str
    corpus_path: str
    provider: ProviderSpec
    trigger_strategy: TriggerStrategy = TriggerStrategy.VERB
    arg_strategy: ArgTemplateStrategy = field(
        default_factory=lambda: ArgTemplateStrategy.from_tag("guideline+trigger")
    )
    decode: DecodeConfig = field(default_factory=DecodeConfig)
    thresholds_path: str | None = None
    gold_triggers: bool = False
    triggers_only: bool = False

    def __post_init__(self) -> None:
        for label, p in (("ontology", self.ontology_path), ("corpus", self.corpus_path)):
            if not Path(p).exists():
                raise PipelineError(f"{label} file {p} does not exist")


def _sentence_triggers(
    sentence: Sentence,
    ont: EventOntology,
    provider: ProbProvider,
    gold_triggers: bool,
) -> list[TriggerPrediction]:
    if gold_triggers:
        return [
            TriggerPrediction(ev.trigger_offset, ev.event_type, prob=1.0)
            for ev in sentence.gold_events
        ]
    req = ProbRequest(doc_id=sentence.doc_id, sent_id=sentence.sent_id, kind=ProbKind.TRIGGER)
    probs = provider.get_trigger_probs(req)
    if probs.per_token.shape[0] != len(sentence.tokens):
        raise PipelineError(
            f"{sentence.doc_id}/{sentence.sent_id}: trigger matrix has "
            f"{probs.per_token.shape[0]} rows for {len(sentence.tokens)} tokens"
        )
    return decode_triggers(probs, ont)


def harvest_corpus(
    corpus: Corpus,
    ont: EventOntology,
    provider: ProbProvider,
    arg_strategy: ArgTemplateStrategy,
    decode_cfg: DecodeConfig,
    gold_triggers: bool = False,
) -> tuple[dict[tuple[str, str], list[TriggerPrediction]], list[ArgCandidate]]:
    """Trigger phase then argument phase for every sentence; returns the decoded
    triggers and the pooled, unfiltered argument candidates."""
    triggers: dict[tuple[str, str], list[TriggerPrediction]] = {}
    candidates: list[ArgCandidate] = []
    for sentence in corpus.sentences():
        preds = _sentence_triggers(sentence, ont, provider, gold_triggers)
        triggers[(sentence.doc_id, sentence.sent_id)] = preds
        for pred in preds:
            trigger_token = sentence.tokens[pred.token_offset]
            for role in lookup_roles(ont, pred.event_type):
                req = ProbRequest(
                    doc_id=sentence.doc_id,
                    sent_id=sentence.sent_id,
                    kind=ProbKind.ARGUMENT,
                    event_type=pred.event_type,
                    role_name=role.role_name,
                    trigger_offset=pred.token_offset,
                    strategy=arg_strategy,
                )
                question = argument_question(
                    role, arg_strategy, trigger_token if arg_strategy.append_trigger else None
                )
                seq = encode(question, sentence, trigger_offset=pred.token_offset)
                sp = provider.get_span_probs(req)
                candidates.extend(harvest_candidates(sp, seq, decode_cfg, req))
    return triggers, candidates


def extract_predictions(
    corpus: Corpus,
    ont: EventOntology,
    provider: ProbProvider,
    arg_strategy: ArgTemplateStrategy,
    decode_cfg: DecodeConfig,
    thresholds: ThresholdTable | None = None,
    gold_triggers: bool = False,
    triggers_only: bool = False,
) -> PredictionSet:
    """Full decode, or only the trigger phase with ``triggers_only``.

    The trigger-only pass exists for file-backed providers: its predictions
    seed `export_requests`, so an adapter can be asked for exactly the
    argument questions the decoded triggers raise.
    """
    if triggers_only:
        triggers = {
            (s.doc_id, s.sent_id): _sentence_triggers(s, ont, provider, gold_triggers)
            for s in corpus.sentences()
        }
        return PredictionSet(triggers=triggers, arguments=[])
    triggers, candidates = harvest_corpus(
        corpus, ont, provider, arg_strategy, decode_cfg, gold_triggers
    )
    if decode_cfg.mode is DecodeMode.DYNAMIC_THRESHOLD:
        if thresholds is None:
            raise PipelineError("dynamic-threshold mode needs a calibrated threshold table")
        kept = apply_threshold(candidates, thresholds)
    else:
        kept = zero_rule(candidates)
    return PredictionSet(triggers=triggers, arguments=kept)


def calibrate_on_corpus(
    dev_corpus: Corpus,
    ont: EventOntology,
    provider: ProbProvider,
    arg_strategy: ArgTemplateStrategy,
    decode_cfg: DecodeConfig,
    gold_triggers: bool = False,
    per_role: bool = True,
) -> ThresholdTable:
    if decode_cfg.mode is DecodeMode.ZERO_RULE:
        raise PipelineError("calibration only applies to dynamic-threshold mode, not zero-rule")
    _, candidates = harvest_corpus(
        dev_corpus, ont, provider, arg_strategy, decode_cfg, gold_triggers
    )
    gold = gold_arg_mentions(dev_corpus)
    if not gold:
        raise PipelineError("dev corpus has no gold arguments; cannot calibrate")
    return calibrate_threshold(candidates, gold, per_role=per_role)


def evaluate_predictions(pred_set: PredictionSet, gold_corpus: Corpus) -> EvalReport:
    return evaluate_mentions(
        pred_triggers=pred_set.trigger_mentions(),
        gold_triggers=gold_trigger_mentions(gold_corpus),
        pred_args=pred_set.argument_mentions(),
        gold_args=gold_arg_mentions(gold_corpus),
    )


def write_predictions(pred_set: PredictionSet, corpus: Corpus, path: str | Path) -> None:
    """Corpus schema plus a predicted_events field, grouped per decoded trigger."""
    args_by_trigger: dict[tuple, list[ArgCandidate]] = {}
    for c in pred_set.arguments:
        args_by_trigger.setdefault(
            (c.doc_id, c.sent_id, c.trigger_offset, c.event_type), []
        ).append(c)
    with open(path, "w", encoding="utf-8") as f:
        for sentence in corpus.sentences():
            rec = sentence_record(sentence)
            predicted = []
            for p in pred_set.triggers.get((sentence.doc_id, sentence.sent_id), []):
                key = (sentence.doc_id, sentence.sent_id, p.token_offset, p.event_type)
                predicted.append(
                    {
                        "trigger_offset": p.token_offset,
                        "event_type": p.event_type,
                        "prob": p.prob,
                        "arguments": [
                            {
                                "role": c.role_name,
                                "start": c.start,
                                "end": c.end,
                                "score": c.score,
                                "no_ans_score": c.no_ans_score,
                            }
                            for c in args_by_trigger.get(key, [])
                        ],
                    }
                )
            rec["predicted_events"] = predicted
            f.write(json.dumps(rec) + "\n")


def load_predictions(path: str | Path) -> PredictionSet:
    triggers: dict[tuple[str, str], list[TriggerPrediction]] = {}
    arguments: list[ArgCandidate] = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise PipelineError(f"{path}:{lineno}: bad record: {e}") from e
            key = (str(rec["doc_id"]), str(rec["sent_id"]))
            preds = triggers.setdefault(key, [])
            for ev in rec.get("predicted_events") or []:
                preds.append(
                    TriggerPrediction(
                        token_offset=int(ev["trigger_offset"]),
                        event_type=str(ev["event_type"]),
                        prob=float(ev.get("prob", 1.0)),
                    )
                )
                for a in ev.get("arguments") or []:
                    arguments.append(
                        ArgCandidate(
                            doc_id=key[0],
                            sent_id=key[1],
                            event_type=str(ev["event_type"]),
                            role_name=str(a["role"]),
                            trigger_offset=int(ev["trigger_offset"]),
                            start=int(a["start"]),
                            end=int(a["end"]),
                            score=float(a.get("score", 0.0)),
                            no_ans_score=float(a.get("no_ans_score", 0.0)),
                        )
                    )
    return PredictionSet(triggers=triggers, arguments=arguments)


def export_requests(
    corpus: Corpus,
    ont: EventOntology,
    trigger_strategy: TriggerStrategy,
    arg_strategy: ArgTemplateStrategy,
    path: str | Path,
    triggers: dict[tuple[str, str], list[TriggerPrediction]] | None = None,
) -> int:
    """Write the request batch consumed by external inference adapters.

    Each record carries the fully instantiated question text and the sentence
    tokens, so adapters never re-derive templates. Argument requests are
    enumerated from the given trigger predictions, or from gold triggers when
    none are given. Returns the number of records written.
    """
    count = 0
    trig_q = trigger_question(trigger_strategy)
    with open(path, "w", encoding="utf-8") as f:
        for sentence in corpus.sentences():
            key = (sentence.doc_id, sentence.sent_id)
            f.write(
                json.dumps(
                    {
                        "kind": "trigger",
                        "doc_id": sentence.doc_id,
                        "sent_id": sentence.sent_id,
                        "question": trig_q.text,
                        "tokens": list(sentence.tokens),
                    }
                )
                + "\n"
            )
            count += 1
            if triggers is None:
                sent_triggers = [
                    TriggerPrediction(ev.trigger_offset, ev.event_type, 1.0)
                    for ev in sentence.gold_events
                ]
            else:
                sent_triggers = triggers.get(key, [])
            for pred in sent_triggers:
                trigger_token = sentence.tokens[pred.token_offset]
                for role in lookup_roles(ont, pred.event_type):
                    question = argument_question(
                        role, arg_strategy, trigger_token if arg_strategy.append_trigger else None
                    )
                    f.write(
                        json.dumps(
                            {
                                "kind": "argument",
                                "doc_id": sentence.doc_id,
                                "sent_id": sentence.sent_id,
                                "event_type": pred.event_type,
                                "role_name": role.role_name,
                                "trigger_offset": pred.token_offset,
                                "question": question.text,
                                "tokens": list(sentence.tokens),
                            }
                        )
                        + "\n"
                    )
                    count += 1
    return count


def run_extract(cfg: RunConfig, ont: EventOntology, corpus: Corpus, out_path: str | Path) -> PredictionSet:
    provider = make_provider(cfg.provider, corpus, ont)
    thresholds = None
    if cfg.decode.mode is DecodeMode.DYNAMIC_THRESHOLD and not cfg.triggers_only:
        if not cfg.thresholds_path:
            raise PipelineError("dynamic-threshold mode needs --thresholds (run calibrate first)")
        from .arguments import load_threshold_table

        thresholds = load_threshold_table(cfg.thresholds_path)
    pred_set = extract_predictions(
        corpus,
        ont,
        provider,
        cfg.arg_strategy,
        cfg.decode,
        thresholds=thresholds,
        gold_triggers=cfg.gold_triggers,
        triggers_only=cfg.triggers_only,
    )
    write_predictions(pred_set, corpus, out_path)
    return pred_set


def run_calibrate(cfg: RunConfig, ont: EventOntology, dev_corpus: Corpus, out_path: str | Path) -> ThresholdTable:
    provider = make_provider(cfg.provider, dev_corpus, ont)
    table = calibrate_on_corpus(
        dev_corpus,
        ont,
        provider,
        cfg.arg_strategy,
        cfg.decode,
        gold_triggers=cfg.gold_triggers,
    )
    save_threshold_table(table, out_path)
    return table
