"""Model-ready input sequences: packing, question+context and option+passage.

Questions and options always sit in the first segment and are replicated into
every window, because a split question (or option) could never be answered;
only the context/passage side is windowed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import MissingSpecial, NoBlanks, OptionOverflow, QuestionOverflow
from .tokenization import Token, Vocabulary, tokenize

BLANK_MARKER_RE = re.compile(r"\[BLANK(\d+)\]")


@dataclass(frozen=True)
class WindowingPolicy:
    max_len: int = 512
    stride: int = 0

    def __post_init__(self):
        if self.max_len < 4:
            raise ValueError("max_len must leave room for [CLS], [SEP], [SEP] and one token")
        if self.stride < 0:
            raise ValueError("stride must be >= 0")


@dataclass(frozen=True)
class InputSequence:
    ids: list[int]
    segment_ids: list[int]
    attention_mask: list[int]
    window_index: int
    origin: str
    answer_in_window: Optional[bool] = None

    def to_record(self) -> dict:
        record = {
            "origin": self.origin,
            "window_index": self.window_index,
            "ids": list(self.ids),
            "segment_ids": list(self.segment_ids),
            "attention_mask": list(self.attention_mask),
        }
        if self.answer_in_window is not None:
            record["answer_in_window"] = self.answer_in_window
        return record


def _chunk_starts(total: int, capacity: int, stride: int) -> list[int]:
    if total == 0:
        return []
    step = capacity - stride
    starts = [0]
    while starts[-1] + capacity < total:
        starts.append(starts[-1] + step)
    return starts


def _pad_to(ids, segments, vocab, max_len):
    n_pad = max_len - len(ids)
    return (
        ids + [vocab.pad_id] * n_pad,
        segments + [0] * n_pad,
        [1] * len(ids) + [0] * n_pad,
    )


def _assemble_pair(
    first_ids: Sequence[int],
    second_ids: Sequence[int],
    vocab: Vocabulary,
    policy: WindowingPolicy,
    origin: str,
    overflow_error,
    answer_span: Optional[tuple[int, int]] = None,
) -> list[InputSequence]:
    capacity = policy.max_len - len(first_ids) - 3
    if capacity < 1:
        raise overflow_error(
            f"first segment of {len(first_ids)} tokens leaves no room in max_len {policy.max_len}"
        )
    if policy.stride >= capacity:
        raise ValueError(f"stride {policy.stride} must be smaller than context capacity {capacity}")
    windows = []
    for window_index, start in enumerate(_chunk_starts(len(second_ids), capacity, policy.stride)):
        chunk = list(second_ids[start : start + capacity])
        ids = [vocab.cls_id, *first_ids, vocab.sep_id, *chunk, vocab.sep_id]
        segments = [0] * (len(first_ids) + 2) + [1] * (len(chunk) + 1)
        ids, segments, attention = _pad_to(ids, segments, vocab, policy.max_len)
        flag = None
        if answer_span is not None:
            a_start, a_end = answer_span
            flag = start <= a_start and a_end <= start + len(chunk)
        windows.append(InputSequence(ids, segments, attention, window_index, origin, flag))
    return windows


def assemble_span_input(
    question_ids: Sequence[int],
    context_ids: Sequence[int],
    vocab: Vocabulary,
    policy: WindowingPolicy = WindowingPolicy(),
    origin: str = "",
    answer_token_span: Optional[tuple[int, int]] = None,
) -> list[InputSequence]:
    """[CLS] question [SEP] context-window [SEP] [PAD]... per window.

    Context capacity per window is max_len - len(question) - 3; the context
    is chunked at that capacity (ceil(n / capacity) windows at stride 0).
    answer_token_span, when given as [start, end) in context token
    coordinates, sets answer_in_window per window.
    """
    return _assemble_pair(
        question_ids, context_ids, vocab, policy, origin, QuestionOverflow, answer_token_span
    )


def assemble_cloze_input(
    option_ids: Sequence[int],
    passage_ids: Sequence[int],
    vocab: Vocabulary,
    policy: WindowingPolicy = WindowingPolicy(),
    origin: str = "",
) -> list[InputSequence]:
    """[CLS] option [SEP] blanked-passage-window [SEP] [PAD]... per window.

    The passage must contain at least one [BLANKi] marker token; markers are
    ordinary single vocabulary tokens, so they survive windowing.
    """
    blank_ids = set(vocab.blank_ids.values())
    if not any(token_id in blank_ids for token_id in passage_ids):
        raise NoBlanks("blanked passage contains no [BLANKi] marker tokens")
    return _assemble_pair(option_ids, passage_ids, vocab, policy, origin, OptionOverflow)


def tokenize_blanked_passage(text: str, vocab: Vocabulary) -> list[Token]:
    """Tokenize a passage with [BLANKi] markers injected as reserved tokens.

    Ordinary tokenization would split the marker into punctuation, so the
    text is split on markers first and the reserved token spliced in.
    Raises MissingSpecial when the marker token is absent from the vocabulary.
    """
    tokens: list[Token] = []
    pos = 0
    for match in BLANK_MARKER_RE.finditer(text):
        tokens.extend(tokenize(text[pos : match.start()], vocab))
        blank_no = int(match.group(1))
        blank_token = f"[BLANK{blank_no}]"
        if blank_token not in vocab:
            raise MissingSpecial(blank_token)
        tokens.append(Token(blank_token, vocab.index[blank_token], is_special=True))
        pos = match.end()
    tokens.extend(tokenize(text[pos:], vocab))
    return tokens


def pack_pretraining_sequences(
    token_ids: Sequence[int],
    vocab: Vocabulary,
    max_len: int = 512,
    origin: str = "",
) -> list[InputSequence]:
    """Single-segment packing: [CLS] chunk [SEP] with chunk capacity max_len-2.

    Chunks partition the input (no token lost or duplicated); the last
    sequence is padded to max_len.
    """
    capacity = max_len - 2
    sequences = []
    for window_index, start in enumerate(range(0, len(token_ids), capacity)):
        chunk = list(token_ids[start : start + capacity])
        ids = [vocab.cls_id, *chunk, vocab.sep_id]
        segments = [0] * len(ids)
        ids, segments, attention = _pad_to(ids, segments, vocab, max_len)
        sequences.append(InputSequence(ids, segments, attention, window_index, origin))
    return sequences
