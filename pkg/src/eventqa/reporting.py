"""Evaluation report writers: delimited text and a rendered figure."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .metrics import BLOCK_LABELS, EvalReport, report_rows

TSV_FIELDS = ["block", "precision", "recall", "f1", "num_pred", "num_gold", "num_correct"]


def write_report_tsv(report: EvalReport, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=TSV_FIELDS, delimiter="\t")
        writer.writeheader()
        for row in report_rows(report):
            writer.writerow(row)


def write_report_figure(report: EvalReport, path: str | Path) -> None:
    """Grouped P/R/F1 bars, one group per scoring criterion."""
    names = [name for name, _ in report.blocks()]
    labels = [BLOCK_LABELS[n] for n in names]
    series = {
        "P": [getattr(report, n).precision for n in names],
        "R": [getattr(report, n).recall for n in names],
        "F1": [getattr(report, n).f1 for n in names],
    }
    fig, ax = plt.subplots(figsize=(7.0, 3.5))
    width = 0.26
    for i, (label, values) in enumerate(series.items()):
        xs = [x + (i - 1) * width for x in range(len(labels))]
        bars = ax.bar(xs, values, width=width, label=label)
        ax.bar_label(bars, fmt="%.1f", fontsize=7, padding=1)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, fontsize=9)
    ax.set_ylim(0, 108)
    ax.set_ylabel("score (%)")
    ax.legend(ncol=3, fontsize=8, loc="upper right", frameon=False)
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
