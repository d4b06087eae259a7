"""Construction of the four MRC datasets.

Span extraction examples are filtered into character-length buckets; cloze
examples blank out 9 randomly chosen sentences of a paragraph and shuffle
them into lettered options. Everything random is a pure function of
(input record, config, seed), so builds are reproducible on any worker count.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from ._util import derive_rng, read_jsonl
from .corpus import Paragraph, Sentence
from .errors import MrcMaskError

BLANK_RE = re.compile(r"\[BLANK(\d+)\]")

# Answer-length buckets in characters; the strict "greater than a and less
# than b" phrasing converted to inclusive bounds.
DEFAULT_BUCKETS = {
    "short-span": ("span", 4, 6),
    "long-span": ("span", 7, 9),
    "short-cloze": ("cloze", 7, 14),
    "long-cloze": ("cloze", 17, 29),
}

# Observed train/dev/test proportions of the published datasets, used as the
# default split ratios when a split is requested without explicit ratios.
DEFAULT_SPLIT_RATIOS = {
    "span": (600 / 950, 150 / 950, 200 / 950),
    "cloze": (4500 / 6500, 1000 / 6500, 1000 / 6500),
}


@dataclass(frozen=True)
class BucketConfig:
    task: str
    min_len: int
    max_len: int
    options_per_passage: int = 9
    max_context_tokens: int = 512

    def __post_init__(self):
        if self.task not in ("span", "cloze"):
            raise ValueError(f"unknown task {self.task!r}")
        if self.min_len > self.max_len:
            raise ValueError(f"min_len {self.min_len} > max_len {self.max_len}")

    @classmethod
    def from_bucket_name(cls, name: str, **overrides) -> "BucketConfig":
        task, lo, hi = DEFAULT_BUCKETS[name]
        params = {"task": task, "min_len": lo, "max_len": hi}
        params.update(overrides)
        return cls(**params)


@dataclass(frozen=True)
class SpanExample:
    id: str
    context: str
    question: str
    answer_text: str
    answer_start: int

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "context": self.context,
            "question": self.question,
            "answer": {"text": self.answer_text, "answer_start": self.answer_start},
        }


@dataclass(frozen=True)
class ClozeExample:
    id: str
    blanked_passage: str
    options: dict[str, str]
    answer_key: list[str]

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "passage": self.blanked_passage,
            "options": self.options,
            "answers": self.answer_key,
        }


@dataclass(frozen=True)
class Skip:
    id: str
    reason: str


def bucket_span_examples(
    records: Iterable[dict], cfg: BucketConfig
) -> Iterator[tuple[str, Union[SpanExample, dict]]]:
    """Filter span candidates into a length bucket.

    Yields ("kept", SpanExample) or ("rejected", {"id", "reason"}). Malformed
    records are rejected with reason "malformed"; the stream never aborts.
    """
    if cfg.task != "span":
        raise ValueError("bucket_span_examples needs a span config")
    for record in records:
        if record is None:  # undecodable line from a lenient reader
            yield "rejected", {"id": "?", "reason": "malformed"}
            continue
        try:
            example = SpanExample(
                id=str(record["id"]),
                context=record["context"],
                question=record["question"],
                answer_text=record["answer"]["text"],
                answer_start=int(record["answer"]["answer_start"]),
            )
        except (KeyError, TypeError, ValueError):
            yield "rejected", {"id": str(record.get("id", "?")), "reason": "malformed"}
            continue
        yield _check_span_example(example, cfg)


def _check_span_example(ex: SpanExample, cfg: BucketConfig):
    n = len(ex.answer_text)
    start = ex.answer_start
    if start < 0 or ex.context[start : start + n] != ex.answer_text:
        return "rejected", {"id": ex.id, "reason": "offset_mismatch"}
    if n < cfg.min_len:
        return "rejected", {"id": ex.id, "reason": "too_short"}
    if n > cfg.max_len:
        return "rejected", {"id": ex.id, "reason": "too_long"}
    if len(ex.context) > cfg.max_context_tokens:
        return "rejected", {"id": ex.id, "reason": "context_too_long"}
    return "kept", ex


def option_letters(n: int) -> list[str]:
    if n > 26:
        raise ValueError("at most 26 options supported")
    return list(string.ascii_uppercase[:n])


def build_cloze_example(
    paragraph: Paragraph, sentences: list[Sentence], cfg: BucketConfig, seed: int
) -> Union[ClozeExample, Skip]:
    """Blank out options_per_passage eligible sentences of one paragraph.

    Blank numbering follows document order of the selected sentences; option
    letters are a seeded shuffle. Substituting the gold option for each blank
    reproduces the paragraph exactly.
    """
    if cfg.task != "cloze":
        raise ValueError("build_cloze_example needs a cloze config")
    paragraph_id = f"{paragraph.doc_id}-{paragraph.index}"
    k = cfg.options_per_passage
    eligible = [s for s in sentences if cfg.min_len <= s.char_len <= cfg.max_len]
    if len(eligible) < k:
        return Skip(paragraph_id, "not_enough_candidates")

    rng = derive_rng(seed, "cloze", paragraph_id)
    chosen = sorted(rng.sample(eligible, k), key=lambda s: s.start)
    for prev, cur in zip(chosen, chosen[1:]):
        if cur.start < prev.end:
            raise MrcMaskError(f"{paragraph_id}: selected sentences overlap")

    letters = option_letters(k)
    rng.shuffle(letters)

    parts = []
    pos = 0
    for i, sent in enumerate(chosen, start=1):
        if paragraph.text[sent.start : sent.end] != sent.text:
            raise MrcMaskError(f"{paragraph_id}: sentence offsets do not match paragraph")
        parts.append(paragraph.text[pos : sent.start])
        parts.append(f"[BLANK{i}]")
        pos = sent.end
    parts.append(paragraph.text[pos:])

    options = {letters[i]: chosen[i].text for i in range(k)}
    return ClozeExample(
        id=paragraph_id,
        blanked_passage="".join(parts),
        options=dict(sorted(options.items())),
        answer_key=list(letters),
    )


def reconstruct_cloze(passage: str, options: dict[str, str], answer_key: list[str]) -> str:
    """Substitute the gold option for every [BLANKi] marker."""

    def sub(match: re.Match) -> str:
        blank_no = int(match.group(1))
        if not 1 <= blank_no <= len(answer_key):
            return match.group(0)
        return options.get(answer_key[blank_no - 1], match.group(0))

    return BLANK_RE.sub(sub, passage)


@dataclass
class ValidationReport:
    path: str
    task: str
    n_records: int = 0
    violations: dict = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = {}

    def add(self, kind: str):
        self.violations[kind] = self.violations.get(kind, 0) + 1

    @property
    def n_violations(self) -> int:
        return sum(self.violations.values())

    @property
    def ok(self) -> bool:
        return self.n_violations == 0

    def to_record(self) -> dict:
        return {
            "path": self.path,
            "task": self.task,
            "records": self.n_records,
            "violations": dict(sorted(self.violations.items())),
            "ok": self.ok,
        }


def validate_dataset(path, cfg: BucketConfig) -> ValidationReport:
    """Count invariant violations in a built dataset file."""
    report = ValidationReport(str(path), cfg.task)
    for record in read_jsonl(path):
        report.n_records += 1
        if cfg.task == "span":
            _validate_span_record(record, cfg, report)
        else:
            _validate_cloze_record(record, cfg, report)
    return report


def _validate_span_record(record: dict, cfg: BucketConfig, report: ValidationReport):
    try:
        context = record["context"]
        answer = record["answer"]["text"]
        start = int(record["answer"]["answer_start"])
    except (KeyError, TypeError, ValueError):
        report.add("malformed")
        return
    if context[start : start + len(answer)] != answer:
        report.add("offset_mismatch")
    if not cfg.min_len <= len(answer) <= cfg.max_len:
        report.add("answer_length")
    if len(context) > cfg.max_context_tokens:
        report.add("context_length")


def _validate_cloze_record(record: dict, cfg: BucketConfig, report: ValidationReport):
    try:
        passage = record["passage"]
        options = record["options"]
        answers = record["answers"]
    except (KeyError, TypeError):
        report.add("malformed")
        return
    k = cfg.options_per_passage
    blank_nos = [int(m.group(1)) for m in BLANK_RE.finditer(passage)]
    if blank_nos != list(range(1, k + 1)):
        report.add("blank_markers")
    if sorted(options) != option_letters(k) or any(not v for v in options.values()):
        report.add("option_set")
    if sorted(answers) != option_letters(k):
        report.add("answer_key_permutation")
    for text in options.values():
        if not cfg.min_len <= len(text) <= cfg.max_len:
            report.add("option_length")
    if BLANK_RE.search(reconstruct_cloze(passage, options, answers)):
        report.add("unresolved_blanks")


def split_name(record_key: str, seed: int, ratios: tuple[float, float, float]) -> str:
    """Stable train/dev/test assignment for a record key (seeded, order-free)."""
    total = sum(ratios)
    u = derive_rng(seed, "split", record_key).random() * total
    if u < ratios[0]:
        return "train"
    if u < ratios[0] + ratios[1]:
        return "dev"
    return "test"
