"""Command-line interface: generate-questions, extract, calibrate, evaluate,
split-zeroshot, export-requests."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .arguments import DecodeConfig, DecodeMode
from .corpus import load_corpus, save_corpus, zero_shot_split
from .metrics import render_report
from .ontology import TriggerStrategy, default_ontology_path, load_ontology, lookup_roles
from .pipeline import (
    ProviderSpec,
    RunConfig,
    evaluate_predictions,
    export_requests,
    load_predictions,
    run_calibrate,
    run_extract,
)
from .questions import ArgTemplateStrategy, argument_question
from .reporting import write_report_figure, write_report_tsv


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--ontology",
        default=str(default_ontology_path()),
        help="ontology file (default: shipped ACE schema)",
    )


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    _add_common(parser)
    parser.add_argument("--corpus", required=True, help="corpus file (JSONL)")
    parser.add_argument(
        "--provider", choices=["oracle", "random", "file"], default="oracle"
    )
    parser.add_argument("--seed", type=int, help="seed for the random provider")
    parser.add_argument("--prob-file", help="probability file for the file provider")
    parser.add_argument(
        "--trigger-strategy",
        choices=[s.value for s in TriggerStrategy],
        default="verb",
    )
    parser.add_argument(
        "--arg-strategy",
        default="guideline+trigger",
        help="role-name|type-role|guideline, optionally with +trigger",
    )
    parser.add_argument("--max-span-length", type=int, default=10)
    parser.add_argument(
        "--mode", choices=[m.value for m in DecodeMode], default="threshold"
    )
    parser.add_argument(
        "--gold-triggers",
        action="store_true",
        help="skip trigger decoding and use gold triggers (zero-shot driver)",
    )


def _run_config(args) -> RunConfig:
    return RunConfig(
        ontology_path=args.ontology,
        corpus_path=args.corpus,
        provider=ProviderSpec(kind=args.provider, seed=args.seed, path=args.prob_file),
        trigger_strategy=TriggerStrategy(args.trigger_strategy),
        arg_strategy=ArgTemplateStrategy.from_tag(args.arg_strategy),
        decode=DecodeConfig(
            max_span_length=args.max_span_length, mode=DecodeMode(args.mode)
        ),
        thresholds_path=getattr(args, "thresholds", None),
        gold_triggers=args.gold_triggers,
        triggers_only=getattr(args, "triggers_only", False),
    )


def cmd_generate_questions(args) -> int:
    ont = load_ontology(args.ontology)
    strategy = ArgTemplateStrategy.from_tag(args.strategy)
    if args.trigger is not None and not strategy.append_trigger:
        strategy = ArgTemplateStrategy(kind=strategy.kind, append_trigger=True)
    for role in lookup_roles(ont, args.event_type):
        q = argument_question(role, strategy, args.trigger)
        print(f"{role.role_name}\t{q.text}")
    return 0


def cmd_extract(args) -> int:
    cfg = _run_config(args)
    ont = load_ontology(cfg.ontology_path)
    corpus = load_corpus(cfg.corpus_path, ont)
    pred_set = run_extract(cfg, ont, corpus, args.out)
    n_triggers = sum(len(v) for v in pred_set.triggers.values())
    print(f"wrote {args.out}: {n_triggers} triggers, {len(pred_set.arguments)} arguments")
    return 0


def cmd_calibrate(args) -> int:
    cfg = _run_config(args)
    ont = load_ontology(cfg.ontology_path)
    corpus = load_corpus(cfg.corpus_path, ont)
    table = run_calibrate(cfg, ont, corpus, args.out)
    print(f"wrote {args.out}: thresholds for {len(table.per_role)} roles")
    return 0


def cmd_evaluate(args) -> int:
    ont = load_ontology(args.ontology)
    gold = load_corpus(args.gold, ont)
    pred_set = load_predictions(args.pred)
    report = evaluate_predictions(pred_set, gold)
    print(render_report(report))
    if args.out_prefix:
        prefix = Path(args.out_prefix)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        tsv = prefix.with_suffix(".tsv")
        png = prefix.with_suffix(".png")
        write_report_tsv(report, tsv)
        write_report_figure(report, png)
        print(f"wrote {tsv} and {png}")
    return 0


def cmd_split_zeroshot(args) -> int:
    ont = load_ontology(args.ontology)
    corpus = load_corpus(args.corpus, ont)
    unseen = {r.strip() for r in args.unseen.split(",") if r.strip()}
    train, test = zero_shot_split(ont, unseen, corpus)
    save_corpus(train, args.out_train)
    save_corpus(test, args.out_test)
    print(
        f"wrote {args.out_train} ({len(train.sentences())} sentences) and "
        f"{args.out_test} ({len(test.sentences())} sentences)"
    )
    return 0


def cmd_export_requests(args) -> int:
    ont = load_ontology(args.ontology)
    corpus = load_corpus(args.corpus, ont)
    triggers = load_predictions(args.pred).triggers if args.pred else None
    n = export_requests(
        corpus,
        ont,
        TriggerStrategy(args.trigger_strategy),
        ArgTemplateStrategy.from_tag(args.arg_strategy),
        args.out,
        triggers=triggers,
    )
    print(f"wrote {args.out}: {n} requests")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eventqa",
        description="Event extraction by question answering: questions, span decoding, scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate-questions", help="print the questions asked for an event type")
    _add_common(p)
    p.add_argument("--event-type", required=True)
    p.add_argument("--strategy", default="guideline")
    p.add_argument("--trigger", help="trigger token for the ' in <trigger>' suffix")
    p.set_defaults(func=cmd_generate_questions)

    p = sub.add_parser("extract", help="decode triggers and argument spans")
    _add_run_options(p)
    p.add_argument("--thresholds", help="threshold table (dynamic-threshold mode)")
    p.add_argument(
        "--triggers-only",
        action="store_true",
        help="stop after the trigger phase (seed for export-requests --pred)",
    )
    p.add_argument("--out", required=True, help="predictions file to write")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("calibrate", help="fit per-role no-answer thresholds on a dev corpus")
    _add_run_options(p)
    p.add_argument("--out", required=True, help="threshold table to write")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("evaluate", help="score a predictions file against gold")
    _add_common(p)
    p.add_argument("--gold", required=True, help="gold corpus file")
    p.add_argument("--pred", required=True, help="predictions file")
    p.add_argument(
        "--out-prefix",
        help="write <prefix>.tsv and <prefix>.png alongside the printed table",
    )
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("split-zeroshot", help="split a corpus by unseen argument roles")
    _add_common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument(
        "--unseen",
        default="Vehicle,Artifact,Target,Victim,Recipient,Buyer",
        help="comma-separated role names held out from training",
    )
    p.add_argument("--out-train", required=True)
    p.add_argument("--out-test", required=True)
    p.set_defaults(func=cmd_split_zeroshot)

    p = sub.add_parser(
        "export-requests", help="write the question/request batch for an inference adapter"
    )
    _add_common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--pred", help="take triggers from this predictions file (default: gold)")
    p.add_argument(
        "--trigger-strategy", choices=[s.value for s in TriggerStrategy], default="verb"
    )
    p.add_argument("--arg-strategy", default="guideline+trigger")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_requests)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
