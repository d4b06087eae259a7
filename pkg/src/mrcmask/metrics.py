"""Scoring: maximum-common-span F1/EM for span extraction, QAC/PAC for cloze.

TP for a single question is the maximum common span (longest contiguous token
run shared by gold and prediction), not the SQuAD bag-of-tokens overlap; a
bag-overlap compatibility mode is available behind overlap="bag".
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ._util import percent_str, read_jsonl
from .errors import ArityError, EmptyGold, MissingPrediction
from .tokenization import _segment

# Published human-performance rows; reference constants, never computed here.
HUMAN_REFERENCE = {
    "short-span": {"F1": 93.56, "EM": 85.34},
    "long-span": {"F1": 90.47, "EM": 82.56},
    "short-cloze": {"QAC": 97.45, "PAC": 92.87},
    "long-cloze": {"QAC": 95.24, "PAC": 90.71},
}


def tokenize_for_eval(text: str) -> list[str]:
    """Vocabulary-free token split for scoring: one token per CJK character,
    punctuation split off, other runs kept whole, whitespace dropped."""
    text = unicodedata.normalize("NFC", text)
    return [unit for unit, _kind, _off in _segment(text)]


def max_common_span(gold: Sequence, pred: Sequence) -> int:
    """Length of the longest contiguous token run common to both sequences."""
    if not gold or not pred:
        return 0
    best = 0
    prev = [0] * (len(pred) + 1)
    for g in gold:
        cur = [0] * (len(pred) + 1)
        for j, p in enumerate(pred, start=1):
            if p == g:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


def _bag_overlap(gold: Sequence, pred: Sequence) -> int:
    return sum((Counter(gold) & Counter(pred)).values())


def span_scores(
    gold: Sequence, pred: Sequence, overlap: str = "mcs"
) -> tuple[float, float, float]:
    """(precision, recall, f1) for one question.

    TP is the maximum common span; FP = len(pred) - TP, FN = len(gold) - TP.
    Scores with a zero denominator are 0.
    """
    if not gold:
        raise EmptyGold("gold answer has no tokens")
    if overlap == "mcs":
        tp = max_common_span(gold, pred)
    elif overlap == "bag":
        tp = _bag_overlap(gold, pred)
    else:
        raise ValueError(f"unknown overlap mode {overlap!r}")
    precision = tp / len(pred) if pred else 0.0
    recall = tp / len(gold)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


def normalize_for_em(text: str) -> str:
    """NFC normalization plus whitespace removal; nothing else."""
    return "".join(unicodedata.normalize("NFC", text).split())


def exact_match(golds: dict[str, str], preds: dict[str, str]) -> float:
    """Fraction of predictions string-equal to gold after normalization."""
    if not golds:
        raise EmptyGold("no gold answers")
    m = 0
    for item_id, gold in golds.items():
        if item_id not in preds:
            raise MissingPrediction(item_id)
        if normalize_for_em(preds[item_id]) == normalize_for_em(gold):
            m += 1
    return m / len(golds)


def cloze_scores(
    golds: dict[str, list[str]], preds: dict[str, list[str]]
) -> tuple[float, float]:
    """(QAC, PAC): per-blank accuracy and all-blanks-correct passage accuracy."""
    if not golds:
        raise EmptyGold("no gold answer keys")
    correct_blanks = 0
    total_blanks = 0
    correct_passages = 0
    for item_id, gold_key in golds.items():
        if item_id not in preds:
            raise MissingPrediction(item_id)
        pred_key = preds[item_id]
        if len(pred_key) != len(gold_key):
            raise ArityError(item_id, len(gold_key), len(pred_key))
        hits = sum(1 for g, p in zip(gold_key, pred_key) if g == p)
        correct_blanks += hits
        total_blanks += len(gold_key)
        if hits == len(gold_key):
            correct_passages += 1
    return correct_blanks / total_blanks, correct_passages / len(golds)


@dataclass
class EvalReport:
    task: str
    n_items: int
    aggregates: dict[str, float]  # metric name -> percentage
    per_item: list[dict]
    missing: list[str] = field(default_factory=list)
    human_reference: Optional[dict] = None

    def to_record(self) -> dict:
        record = {"task": self.task, "n": self.n_items}
        record.update({k.lower(): v for k, v in self.aggregates.items()})
        if self.human_reference:
            record["human_reference"] = self.human_reference
        if self.missing:
            record["missing_predictions"] = self.missing
        record["per_item"] = self.per_item
        return record

    def to_table(self) -> str:
        metrics = list(self.aggregates)
        lines = ["\t".join(["Models"] + metrics)]
        if self.human_reference:
            cells = ["Human Performance (reference, not computed)"]
            cells += [f"{self.human_reference[m]:.2f}" for m in metrics]
            lines.append("\t".join(cells))
        cells = ["Predictions"]
        cells += [f"{self.aggregates[m]:.2f}" for m in metrics]
        lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def _pct(value: float) -> float:
    """Ratio -> percentage with 2 decimals, round-half-up."""
    return float(percent_str(round(value * 10**12), 10**12))


def _load_gold(path, task: str) -> dict:
    golds = {}
    for record in read_jsonl(path):
        if task == "span":
            golds[str(record["id"])] = record["answer"]["text"]
        else:
            golds[str(record["id"])] = list(record["answers"])
    return golds


def _load_predictions(path, task: str) -> dict:
    preds = {}
    for record in read_jsonl(path):
        if task == "span":
            preds[str(record["id"])] = record["prediction_text"]
        else:
            preds[str(record["id"])] = list(record["answers"])
    return preds


def score_file(
    gold_path,
    pred_path,
    task: str,
    overlap: str = "mcs",
    average: str = "macro",
    reference: Optional[str] = None,
) -> EvalReport:
    """Score a prediction file against a gold file.

    Missing predictions are listed in the report and the remaining items are
    scored. average="macro" means the F1 aggregate is the mean of per-question
    F1; "micro" pools TP/FP/FN over all questions first.
    """
    golds = _load_gold(gold_path, task)
    preds = _load_predictions(pred_path, task)
    if not golds:
        raise EmptyGold(f"{gold_path}: no gold records")
    missing = sorted(item_id for item_id in golds if item_id not in preds)
    scored_ids = [item_id for item_id in golds if item_id in preds]

    per_item = []
    if task == "span":
        f1_sum = 0.0
        em_count = 0
        pooled_tp = pooled_pred = pooled_gold = 0
        for item_id in scored_ids:
            gold_tokens = tokenize_for_eval(golds[item_id])
            pred_tokens = tokenize_for_eval(preds[item_id])
            precision, recall, f1 = span_scores(gold_tokens, pred_tokens, overlap=overlap)
            em = int(normalize_for_em(preds[item_id]) == normalize_for_em(golds[item_id]))
            tp = max_common_span(gold_tokens, pred_tokens) if overlap == "mcs" else _bag_overlap(
                gold_tokens, pred_tokens
            )
            pooled_tp += tp
            pooled_pred += len(pred_tokens)
            pooled_gold += len(gold_tokens)
            f1_sum += f1
            em_count += em
            per_item.append({"id": item_id, "f1": _pct(f1), "em": em})
        n = len(scored_ids)
        if n == 0:
            aggregates = {"F1": 0.0, "EM": 0.0}
        elif average == "micro":
            p = pooled_tp / pooled_pred if pooled_pred else 0.0
            r = pooled_tp / pooled_gold if pooled_gold else 0.0
            f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
            aggregates = {"F1": _pct(f1), "EM": _pct(em_count / n)}
        else:
            aggregates = {"F1": _pct(f1_sum / n), "EM": _pct(em_count / n)}
    else:
        subset_golds = {i: golds[i] for i in scored_ids}
        subset_preds = {i: preds[i] for i in scored_ids}
        for item_id in scored_ids:
            hits = sum(1 for g, p in zip(subset_golds[item_id], subset_preds[item_id]) if g == p)
            if len(subset_preds[item_id]) != len(subset_golds[item_id]):
                raise ArityError(item_id, len(subset_golds[item_id]), len(subset_preds[item_id]))
            per_item.append(
                {
                    "id": item_id,
                    "correct_blanks": hits,
                    "total_blanks": len(subset_golds[item_id]),
                    "pac": int(hits == len(subset_golds[item_id])),
                }
            )
        if scored_ids:
            qac, pac = cloze_scores(subset_golds, subset_preds)
            aggregates = {"QAC": _pct(qac), "PAC": _pct(pac)}
        else:
            aggregates = {"QAC": 0.0, "PAC": 0.0}

    human = HUMAN_REFERENCE.get(reference) if reference else None
    return EvalReport(
        task=task,
        n_items=len(scored_ids),
        aggregates=aggregates,
        per_item=per_item,
        missing=missing,
        human_reference=dict(human) if human else None,
    )
