"""CLI: qa-adapter run --model <dir> --requests <file> --out <file>."""

from __future__ import annotations

import argparse
import logging
import sys

from .models import ModelLoadError, load_models
from .requests import RequestError, read_requests
from .runner import infer_batch, write_records


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qa-adapter",
        description="Run trigger/argument QA models and emit probability files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run inference over a request batch")
    run.add_argument(
        "--model",
        required=True,
        help="directory containing trigger/ and argument/ model sub-directories",
    )
    run.add_argument("--requests", required=True, help="request batch (JSONL)")
    run.add_argument("--out", required=True, help="probability file to write")
    run.add_argument("--device", default="cpu")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        models = load_models(args.model, device=args.device)
        batch = read_requests(args.requests)
        records = infer_batch(batch, models)
        write_records(records, args.out)
    except (ModelLoadError, RequestError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    skipped = sum(1 for r in records if r.get("skipped"))
    print(f"wrote {args.out}: {len(records)} records ({skipped} skipped)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
