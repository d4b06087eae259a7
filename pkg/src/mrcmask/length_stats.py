"""Answer-length histograms, probability distributions, and statistics tables.

The distribution file written here ({"counts": {...}, "total": N}) is the
hand-off format consumed by the masking engine (`maskgen --dist-from`).
Counts are exact integers, so rendering and re-parsing round-trips exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from ._util import json_line, percent_str, read_jsonl
from .errors import EmptyDataset, IOFailure, TaskMismatch


class LengthDistribution:
    """Counts per answer length and the derived probability distribution.

    Zero-count lengths are dropped; probabilities use full float precision
    (the rounded percentages are presentation only and never feed sampling).
    """

    def __init__(self, counts: Mapping[int, int]):
        cleaned = {}
        for length, count in counts.items():
            length, count = int(length), int(count)
            if count < 0:
                raise ValueError(f"negative count {count} for length {length}")
            if count > 0:
                cleaned[length] = count
        if not cleaned:
            raise EmptyDataset("length distribution has no nonzero counts")
        self.counts: dict[int, int] = dict(sorted(cleaned.items()))
        self.total: int = sum(cleaned.values())
        self.probs: dict[int, float] = {l: c / self.total for l, c in self.counts.items()}

    @property
    def lengths(self) -> list[int]:
        return list(self.counts)

    @property
    def min_len(self) -> int:
        return next(iter(self.counts))

    @property
    def max_len(self) -> int:
        return next(reversed(self.counts))

    def percents(self) -> dict[int, str]:
        """Length -> percentage string, round-half-up to 2 decimals."""
        return {l: percent_str(c, self.total) for l, c in self.counts.items()}

    def __eq__(self, other) -> bool:
        return isinstance(other, LengthDistribution) and self.counts == other.counts

    def __repr__(self) -> str:
        return f"LengthDistribution({self.counts!r})"


def to_probabilities(hist: LengthDistribution) -> LengthDistribution:
    """Normalized view of a histogram (probs l -> X_l / sum X_l).

    Construction already normalizes, so this validates and returns the
    distribution; kept as the explicit conversion point for callers holding
    raw count mappings.
    """
    if not isinstance(hist, LengthDistribution):
        hist = LengthDistribution(hist)
    if hist.total <= 0:
        raise EmptyDataset("cannot normalize an empty histogram")
    return hist


def record_answer_lengths(record: dict, task: str) -> list[int]:
    """Character lengths of the answers carried by one dataset record."""
    if task == "span":
        return [len(record["answer"]["text"])]
    if task == "cloze":
        return [len(text) for text in record["options"].values()]
    raise ValueError(f"unknown task {task!r}")


def length_histogram(records: Iterable[dict], task: str) -> LengthDistribution:
    counts: dict[int, int] = {}
    for record in records:
        for length in record_answer_lengths(record, task):
            counts[length] = counts.get(length, 0) + 1
    if not counts:
        raise EmptyDataset("no records")
    return LengthDistribution(counts)


def answer_length_histogram(path, task: str) -> LengthDistribution:
    """Histogram of answer_text (span) or option (cloze) character lengths."""
    return length_histogram(read_jsonl(path), task)


def save_distribution(dist: LengthDistribution, path) -> None:
    payload = {"counts": {str(l): c for l, c in dist.counts.items()}, "total": dist.total}
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(json_line(payload))
            f.write("\n")
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


def load_distribution(path) -> LengthDistribution:
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IOFailure(f"{path}: invalid JSON: {exc}") from exc
    dist = LengthDistribution(payload["counts"])
    if "total" in payload and int(payload["total"]) != dist.total:
        raise IOFailure(
            f"{path}: declared total {payload['total']} != sum of counts {dist.total}"
        )
    return dist


SPAN_ROWS = (
    "Paragraph #",
    "Passage #",
    "Question #",
    "Max Tokens in a Context #",
    "Max Answer Tokens #",
    "Min Answer Tokens #",
)
CLOZE_ROWS = (
    "Passages #",
    "Blanks #",
    "Max Tokens in a Passage #",
    "Max Answer Tokens #",
    "Min Answer Tokens #",
    "Options #",
)


@dataclass
class DatasetStats:
    name: str
    task: str
    n_records: int
    n_passages: int
    n_paragraphs: int
    max_context_tokens: int
    options_per_passage: int
    hist: LengthDistribution

    def summary_rows(self) -> dict[str, int]:
        if self.task == "span":
            return {
                "Paragraph #": self.n_paragraphs,
                "Passage #": self.n_passages,
                "Question #": self.n_records,
                "Max Tokens in a Context #": self.max_context_tokens,
                "Max Answer Tokens #": self.hist.max_len,
                "Min Answer Tokens #": self.hist.min_len,
            }
        return {
            "Passages #": self.n_records,
            "Blanks #": self.hist.total,
            "Max Tokens in a Passage #": self.max_context_tokens,
            "Max Answer Tokens #": self.hist.max_len,
            "Min Answer Tokens #": self.hist.min_len,
            "Options #": self.options_per_passage,
        }


def collect_stats(path, task: str, name: str = "") -> DatasetStats:
    """Single streaming pass over a dataset file.

    Distinct passages/paragraphs are tracked by hash fingerprint; everything
    else is a running aggregate.
    """
    from .datasets import reconstruct_cloze  # local import avoids a cycle

    def fingerprint(text: str) -> bytes:
        # Stable across processes, unlike the salted builtin hash().
        return hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()

    counts: dict[int, int] = {}
    passages: set[bytes] = set()
    paragraph_keys: set[bytes] = set()
    n_records = 0
    max_context = 0
    options_per_passage = 0
    for record in read_jsonl(path):
        n_records += 1
        for length in record_answer_lengths(record, task):
            counts[length] = counts.get(length, 0) + 1
        if task == "span":
            context = record["context"]
            passages.add(fingerprint(context))
            paragraph_keys.add(fingerprint(str(record.get("paragraph_id", context))))
            max_context = max(max_context, len(context))
        else:
            full = reconstruct_cloze(record["passage"], record["options"], record["answers"])
            max_context = max(max_context, len(full))
            options_per_passage = max(options_per_passage, len(record["options"]))
    if n_records == 0:
        raise EmptyDataset(f"{path}: no records")
    return DatasetStats(
        name=name or str(path),
        task=task,
        n_records=n_records,
        n_passages=len(passages) if task == "span" else n_records,
        n_paragraphs=len(paragraph_keys) if task == "span" else n_records,
        max_context_tokens=max_context,
        options_per_passage=options_per_passage,
        hist=LengthDistribution(counts),
    )


def stats_report(datasets: list[DatasetStats], fmt: str = "tsv") -> str:
    """Render summary rows plus the per-length breakdown with PP% columns."""
    if fmt not in ("tsv", "markdown", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    tasks = {d.task for d in datasets}
    if len(tasks) > 1:
        raise TaskMismatch(f"cannot mix tasks in one report: {sorted(tasks)}")
    task = tasks.pop() if tasks else None
    row_labels = SPAN_ROWS if task == "span" else CLOZE_ROWS

    if fmt == "json":
        payload = {
            "task": task,
            "datasets": [
                {
                    "name": d.name,
                    "summary": d.summary_rows(),
                    "lengths": {
                        str(l): {"count": c, "pp": d.hist.percents()[l]}
                        for l, c in d.hist.counts.items()
                    },
                    "total": d.hist.total,
                }
                for d in datasets
            ],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    sep = "\t" if fmt == "tsv" else " | "
    lines = []

    def emit(cells):
        if fmt == "tsv":
            lines.append(sep.join(str(c) for c in cells))
        else:
            lines.append("| " + sep.join(str(c) for c in cells) + " |")

    emit([""] + [d.name for d in datasets])
    if fmt == "markdown":
        emit(["---"] * (len(datasets) + 1))
    if datasets:
        for label in row_labels:
            emit([label] + [d.summary_rows()[label] for d in datasets])
        header = ["# Tokens"]
        for d in datasets:
            header += [f"#{d.name}", "PP %"]
        emit(header)
        if fmt == "markdown":
            emit(["---"] * len(header))
        all_lengths = sorted({l for d in datasets for l in d.hist.counts})
        for length in all_lengths:
            cells = [length]
            for d in datasets:
                count = d.hist.counts.get(length, 0)
                pp = d.hist.percents().get(length, "0.00")
                cells += [count, f"{pp}%"]
            emit(cells)
        total_cells = ["Total"]
        for d in datasets:
            total_cells += [d.hist.total, "100.00%"]
        emit(total_cells)
    return "\n".join(lines) + "\n"
