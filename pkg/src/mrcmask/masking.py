"""Span masking with a target length distribution.

Mask-span lengths are drawn from an answer-length distribution; spans are
placed without overlap until a 15% token budget is spent (the final span may
overshoot by less than the largest distribution length). Each span then gets
one mask/random/keep action at 80/10/10, applied to the whole span, and every
input sequence is masked dupe_factor independent times (dynamic masking).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._util import derive_rng, round_half_up
from .errors import NoPlacement
from .length_stats import LengthDistribution
from .tokenization import Vocabulary

LABEL_IGNORE = -1  # sentinel for unmasked label positions (bit-exact contract)

ACTION_MASK = "masked"
ACTION_RANDOM = "random"
ACTION_KEEP = "kept"

_PLACEMENT_RETRIES = 30


@dataclass(frozen=True)
class MaskingConfig:
    length_dist: LengthDistribution
    budget_fraction: float = 0.15
    dupe_factor: int = 10
    replace_probs: tuple[float, float, float] = (0.8, 0.1, 0.1)
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.budget_fraction < 1:
            raise ValueError(f"budget_fraction {self.budget_fraction} not in (0, 1)")
        if self.dupe_factor < 1:
            raise ValueError(f"dupe_factor {self.dupe_factor} must be >= 1")
        if abs(sum(self.replace_probs) - 1.0) > 1e-9 or any(p < 0 for p in self.replace_probs):
            raise ValueError(f"replace_probs {self.replace_probs} must be nonnegative and sum to 1")


@dataclass(frozen=True)
class MaskPlan:
    """Chosen spans over the maskable positions of one sequence."""

    spans: tuple[tuple[int, int], ...]  # (start, length), sorted, non-overlapping
    budget_tokens: int
    masked_tokens: int


@dataclass(frozen=True)
class MaskedSequence:
    input_ids: list[int]
    labels: list[int]  # original id at planned positions, LABEL_IGNORE elsewhere
    spans: tuple[tuple[int, int], ...]  # (start, length) in sequence coordinates
    span_actions: tuple[str, ...]  # aligned with spans


def sample_span_length(dist: LengthDistribution, rng) -> int:
    """Draw a span length by inverse CDF over lengths in ascending order."""
    u = rng.random()
    cum = 0.0
    for length, prob in dist.probs.items():
        cum += prob
        if u < cum:
            return length
    return dist.max_len


def _feasible_start_count(gaps: list[tuple[int, int]], length: int) -> int:
    return sum(max(0, (ge - gs) - length + 1) for gs, ge in gaps)


def _place_uniform(gaps: list[tuple[int, int]], length: int, k: int) -> int:
    """Map the k-th feasible start to a position and split the owning gap."""
    for i, (gs, ge) in enumerate(gaps):
        room = (ge - gs) - length + 1
        if room <= 0:
            continue
        if k < room:
            start = gs + k
            replacement = []
            if start > gs:
                replacement.append((gs, start))
            if start + length < ge:
                replacement.append((start + length, ge))
            gaps[i : i + 1] = replacement
            return start
        k -= room
    raise AssertionError("k out of range for feasible starts")


def plan_masks(maskable_len: int, cfg: MaskingConfig, rng) -> MaskPlan:
    """Iteratively sample (length, start) pairs until the budget is spent.

    budget_tokens = max(1, round(budget_fraction * maskable_len)), rounded
    half-up. Starts are uniform over the positions where the span fits without
    overlapping earlier spans; an unplaceable length is redrawn. Raises
    NoPlacement only when no length in the distribution fits anywhere.
    """
    dist = cfg.length_dist
    budget = max(1, round_half_up(cfg.budget_fraction * maskable_len))
    gaps: list[tuple[int, int]] = [(0, maskable_len)] if maskable_len > 0 else []
    spans: list[tuple[int, int]] = []
    masked = 0
    while masked < budget:
        placed = False
        for _ in range(_PLACEMENT_RETRIES):
            length = sample_span_length(dist, rng)
            room = _feasible_start_count(gaps, length)
            if room == 0:
                continue
            start = _place_uniform(gaps, length, rng.randrange(room))
            spans.append((start, length))
            masked += length
            placed = True
            break
        if not placed:
            # The sampled lengths kept missing; fall back to the smallest
            # length that still fits so the budget loop always progresses.
            for length in dist.lengths:
                room = _feasible_start_count(gaps, length)
                if room > 0:
                    start = _place_uniform(gaps, length, rng.randrange(room))
                    spans.append((start, length))
                    masked += length
                    placed = True
                    break
        if not placed:
            raise NoPlacement(
                f"no span length from {dist.lengths} fits in the remaining "
                f"free positions (maskable_len={maskable_len})"
            )
    return MaskPlan(tuple(sorted(spans)), budget, masked)


def _draw_action(cfg: MaskingConfig, rng) -> str:
    u = rng.random()
    p_mask, p_random, _ = cfg.replace_probs
    if u < p_mask:
        return ACTION_MASK
    if u < p_mask + p_random:
        return ACTION_RANDOM
    return ACTION_KEEP


def maskable_positions(ids: Sequence[int], vocab: Vocabulary) -> list[int]:
    """Positions eligible for masking: everything but special-token ids."""
    return [i for i, token_id in enumerate(ids) if token_id not in vocab.special_ids]


def apply_masking(
    ids: Sequence[int], plan: MaskPlan, cfg: MaskingConfig, rng, vocab: Vocabulary
) -> MaskedSequence:
    """Replace planned spans at the sequence level.

    One action is drawn per span: every position in the span becomes [MASK],
    or an independently drawn non-special vocabulary id, or stays unchanged.
    Labels record the original id at every planned position.
    """
    positions = maskable_positions(ids, vocab)
    if plan.spans and plan.spans[-1][0] + plan.spans[-1][1] > len(positions):
        raise ValueError("plan does not fit the maskable portion of ids")
    input_ids = list(ids)
    labels = [LABEL_IGNORE] * len(ids)
    seq_spans = []
    actions = []
    pool = vocab.non_special_ids
    for start, length in plan.spans:
        action = _draw_action(cfg, rng)
        covered = positions[start : start + length]
        for pos in covered:
            labels[pos] = ids[pos]
            if action == ACTION_MASK:
                input_ids[pos] = vocab.mask_id
            elif action == ACTION_RANDOM:
                input_ids[pos] = pool[rng.randrange(len(pool))]
        seq_spans.append((covered[0], length))
        actions.append(action)
    return MaskedSequence(input_ids, labels, tuple(seq_spans), tuple(actions))


def generate_pretraining_examples(
    ids: Sequence[int], cfg: MaskingConfig, vocab: Vocabulary, seq_id: str = "0"
) -> list[MaskedSequence]:
    """dupe_factor independent (plan, apply) passes over one packed sequence.

    Each duplicate draws from its own sub-seed hash(seed, seq_id, dupe_index),
    so output is identical no matter how sequences are sharded over workers.
    """
    n_maskable = len(maskable_positions(ids, vocab))
    out = []
    for dupe_index in range(cfg.dupe_factor):
        rng = derive_rng(cfg.seed, "mask", seq_id, dupe_index)
        plan = plan_masks(n_maskable, cfg, rng)
        out.append(apply_masking(ids, plan, cfg, rng, vocab))
    return out


def masked_sequence_record(seq_id: str, dupe_index: int, seq: MaskedSequence) -> dict:
    """JSONL record for one masked duplicate (-1 label sentinel included)."""
    return {
        "seq_id": seq_id,
        "dupe_index": dupe_index,
        "input_ids": list(seq.input_ids),
        "labels": list(seq.labels),
        "spans": [[start, length, action] for (start, length), action in zip(seq.spans, seq.span_actions)],
    }
