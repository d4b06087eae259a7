"""Matplotlib figure rendering for the report paths (stats and score).

Figures are written straight to files next to the delimited output; the Agg
backend keeps everything headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .length_stats import DatasetStats, LengthDistribution
from .metrics import EvalReport


def save_length_bars(stats_list: list[DatasetStats], out_path) -> None:
    """Grouped bars of answer-length counts, one group color per dataset."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    all_lengths = sorted({l for d in stats_list for l in d.hist.counts})
    width = 0.8 / max(1, len(stats_list))
    for i, d in enumerate(stats_list):
        xs = [x + i * width for x in range(len(all_lengths))]
        ys = [d.hist.counts.get(l, 0) for l in all_lengths]
        ax.bar(xs, ys, width=width, label=d.name)
    ax.set_xticks([x + 0.4 - width / 2 for x in range(len(all_lengths))])
    ax.set_xticklabels([str(l) for l in all_lengths])
    ax.set_xlabel("answer length (tokens)")
    ax.set_ylabel("count")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)


def save_length_pie(dist: LengthDistribution, title: str, out_path) -> None:
    """Pie chart of the length-probability shares with percent labels."""
    fig, ax = plt.subplots(figsize=(5, 5))
    labels = [f"len {l}" for l in dist.counts]
    shares = [dist.probs[l] for l in dist.counts]
    pcts = dist.percents()
    ax.pie(
        shares,
        labels=labels,
        autopct=lambda _: "",
        startangle=90,
        counterclock=False,
    )
    legend_labels = [f"len {l}: {pcts[l]}%" for l in dist.counts]
    ax.legend(legend_labels, loc="center left", bbox_to_anchor=(1.0, 0.5), fontsize=8)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)


def save_score_histogram(report: EvalReport, out_path) -> None:
    """Distribution of per-item scores for a scored prediction file."""
    fig, ax = plt.subplots(figsize=(6, 4))
    if report.task == "span":
        values = [item["f1"] for item in report.per_item]
        ax.hist(values, bins=20, range=(0, 100), edgecolor="black")
        ax.set_xlabel("per-question F1 (%)")
    else:
        values = [item["correct_blanks"] for item in report.per_item]
        top = max([item["total_blanks"] for item in report.per_item], default=9)
        ax.hist(values, bins=range(0, top + 2), edgecolor="black", align="left")
        ax.set_xlabel("correct blanks per passage")
    ax.set_ylabel("items")
    ax.set_title(" ".join(f"{k}={v:.2f}" for k, v in report.aggregates.items()))
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
