import random

import pytest

from mrcmask.errors import NoPlacement
from mrcmask.length_stats import LengthDistribution
from mrcmask.masking import (
    ACTION_KEEP,
    ACTION_MASK,
    ACTION_RANDOM,
    LABEL_IGNORE,
    MaskingConfig,
    MaskPlan,
    apply_masking,
    generate_pretraining_examples,
    maskable_positions,
    masked_sequence_record,
    plan_masks,
    sample_span_length,
)

from conftest import build_vocab

TABLE5_SHORT_SPAN = LengthDistribution({4: 16171, 5: 8566, 6: 6653})


class FakeRng:
    """Deterministic stand-in: feeds queued values to random()/randrange()."""

    def __init__(self, randoms=(), randranges=()):
        self.randoms = list(randoms)
        self.randranges = list(randranges)

    def random(self):
        return self.randoms.pop(0)

    def randrange(self, n):
        value = self.randranges.pop(0)
        assert 0 <= value < n
        return value


def cfg_for(dist, **kw):
    return MaskingConfig(length_dist=dist, **kw)


def test_sample_degenerate():
    dist = LengthDistribution({4: 10})
    rng = random.Random(0)
    assert all(sample_span_length(dist, rng) == 4 for _ in range(50))


def test_sample_inverse_cdf_hand_trace():
    # CDF: 4 -> 0.5152, 5 -> 0.7881, 6 -> 1.0
    dist = LengthDistribution({4: 5152, 5: 2729, 6: 2119})
    assert sample_span_length(dist, FakeRng(randoms=[0.9])) == 6
    assert sample_span_length(dist, FakeRng(randoms=[0.5])) == 4
    assert sample_span_length(dist, FakeRng(randoms=[0.6])) == 5
    assert sample_span_length(dist, FakeRng(randoms=[0.0])) == 4


def test_sample_frequencies_match_target():
    dist = LengthDistribution({4: 5152, 5: 2729, 6: 2119})
    rng = random.Random(1234)
    n = 100_000
    counts = {4: 0, 5: 0, 6: 0}
    for _ in range(n):
        counts[sample_span_length(dist, rng)] += 1
    for length, prob in dist.probs.items():
        assert abs(counts[length] / n - prob) < 0.005


def test_plan_budget_unit_spans():
    cfg = cfg_for(LengthDistribution({1: 1}), budget_fraction=0.15)
    plan = plan_masks(20, cfg, random.Random(0))
    assert plan.budget_tokens == 3
    assert plan.masked_tokens == 3
    assert len(plan.spans) == 3
    assert all(length == 1 for _, length in plan.spans)


def test_plan_overshoot_hand_trace():
    cfg = cfg_for(LengthDistribution({2: 1}), budget_fraction=0.15)
    plan = plan_masks(20, cfg, random.Random(0))
    assert plan.budget_tokens == 3
    assert len(plan.spans) == 2
    assert plan.masked_tokens == 4  # 2 < 3 so a second span is drawn, then 4 >= 3


def test_plan_no_placement():
    cfg = cfg_for(LengthDistribution({4: 1}))
    with pytest.raises(NoPlacement):
        plan_masks(3, cfg, random.Random(0))


def test_plan_budget_floor_of_one():
    cfg = cfg_for(LengthDistribution({1: 1}), budget_fraction=0.15)
    plan = plan_masks(4, cfg, random.Random(0))  # 0.15*4 = 0.6 -> floor 1
    assert plan.budget_tokens == 1
    assert plan.masked_tokens >= 1


def test_plan_spans_never_overlap_fuzz():
    cfg = cfg_for(TABLE5_SHORT_SPAN)
    rng = random.Random(7)
    for trial in range(200):
        maskable = rng.randint(10, 200)
        plan = plan_masks(maskable, cfg, random.Random(trial))
        spans = sorted(plan.spans)
        for (s1, l1), (s2, _) in zip(spans, spans[1:]):
            assert s1 + l1 <= s2
        assert all(s >= 0 and s + l <= maskable for s, l in spans)
        assert plan.budget_tokens <= plan.masked_tokens
        assert plan.masked_tokens - plan.budget_tokens < TABLE5_SHORT_SPAN.max_len
        assert plan.masked_tokens == sum(l for _, l in plan.spans)


def test_plan_deterministic():
    cfg = cfg_for(TABLE5_SHORT_SPAN)
    assert plan_masks(100, cfg, random.Random(5)) == plan_masks(100, cfg, random.Random(5))


def _sequence(vocab, n_body=20):
    rng = random.Random(3)
    pool = vocab.non_special_ids
    body = [pool[rng.randrange(len(pool))] for _ in range(n_body)]
    return [vocab.cls_id] + body + [vocab.sep_id]


def test_apply_forced_mask_action():
    vocab = build_vocab()
    ids = _sequence(vocab)
    plan = MaskPlan(spans=((2, 3),), budget_tokens=3, masked_tokens=3)
    cfg = cfg_for(LengthDistribution({3: 1}))
    out = apply_masking(ids, plan, cfg, FakeRng(randoms=[0.0]), vocab)
    covered = [3, 4, 5]  # maskable position 2..5 maps past [CLS]
    for pos in covered:
        assert out.input_ids[pos] == vocab.mask_id
        assert out.labels[pos] == ids[pos]
    for pos in range(len(ids)):
        if pos not in covered:
            assert out.input_ids[pos] == ids[pos]
            assert out.labels[pos] == LABEL_IGNORE
    assert out.span_actions == (ACTION_MASK,)
    assert out.spans == ((3, 3),)


def test_apply_forced_keep_action_still_labels():
    vocab = build_vocab()
    ids = _sequence(vocab)
    plan = MaskPlan(spans=((2, 3),), budget_tokens=3, masked_tokens=3)
    cfg = cfg_for(LengthDistribution({3: 1}))
    out = apply_masking(ids, plan, cfg, FakeRng(randoms=[0.95]), vocab)
    assert out.input_ids == list(ids)
    assert [p for p, label in enumerate(out.labels) if label != LABEL_IGNORE] == [3, 4, 5]
    assert out.span_actions == (ACTION_KEEP,)


def test_apply_forced_random_action_draws_non_special():
    vocab = build_vocab()
    ids = _sequence(vocab)
    plan = MaskPlan(spans=((2, 3),), budget_tokens=3, masked_tokens=3)
    cfg = cfg_for(LengthDistribution({3: 1}))
    out = apply_masking(ids, plan, cfg, FakeRng(randoms=[0.85], randranges=[0, 1, 2]), vocab)
    assert out.span_actions == (ACTION_RANDOM,)
    for pos in (3, 4, 5):
        assert out.input_ids[pos] in vocab.non_special_ids
        assert out.labels[pos] == ids[pos]


def test_action_frequencies():
    vocab = build_vocab()
    ids = _sequence(vocab, n_body=30)
    plan = MaskPlan(spans=((0, 2), (10, 2), (20, 2)), budget_tokens=5, masked_tokens=6)
    cfg = cfg_for(LengthDistribution({2: 1}))
    rng = random.Random(99)
    counts = {ACTION_MASK: 0, ACTION_RANDOM: 0, ACTION_KEEP: 0}
    for _ in range(10_000):
        out = apply_masking(ids, plan, cfg, rng, vocab)
        for action in out.span_actions:
            counts[action] += 1
    total = sum(counts.values())
    assert abs(counts[ACTION_MASK] / total - 0.8) < 0.01
    assert abs(counts[ACTION_RANDOM] / total - 0.1) < 0.01
    assert abs(counts[ACTION_KEEP] / total - 0.1) < 0.01


def test_sequence_level_actions_never_mixed():
    vocab = build_vocab()
    ids = _sequence(vocab, n_body=60)
    cfg = cfg_for(TABLE5_SHORT_SPAN, dupe_factor=5, seed=11)
    for seq in generate_pretraining_examples(ids, cfg, vocab, seq_id="s"):
        for (start, length), action in zip(seq.spans, seq.span_actions):
            window = range(start, start + length)
            if action == ACTION_MASK:
                assert all(seq.input_ids[p] == vocab.mask_id for p in window)
            elif action == ACTION_KEEP:
                assert all(seq.input_ids[p] == ids[p] for p in window)
            else:
                assert all(seq.input_ids[p] != vocab.mask_id for p in window)
            assert all(seq.labels[p] == ids[p] for p in window)


def test_specials_never_masked():
    vocab = build_vocab()
    ids = _sequence(vocab, n_body=40) + [vocab.pad_id] * 10
    cfg = cfg_for(TABLE5_SHORT_SPAN, dupe_factor=10, seed=2)
    special_positions = [i for i, t in enumerate(ids) if t in vocab.special_ids]
    for seq in generate_pretraining_examples(ids, cfg, vocab, seq_id="s"):
        for pos in special_positions:
            assert seq.input_ids[pos] == ids[pos]
            assert seq.labels[pos] == LABEL_IGNORE


def test_generate_dupe_counts():
    vocab = build_vocab()
    ids = _sequence(vocab, n_body=50)
    cfg = cfg_for(TABLE5_SHORT_SPAN, dupe_factor=10, seed=1)
    assert len(generate_pretraining_examples(ids, cfg, vocab, seq_id="a")) == 10
    cfg1 = cfg_for(TABLE5_SHORT_SPAN, dupe_factor=1, seed=1)
    assert len(generate_pretraining_examples(ids, cfg1, vocab, seq_id="a")) == 1


def test_generate_deterministic_and_unmasked_shared():
    vocab = build_vocab()
    ids = _sequence(vocab, n_body=50)
    cfg = cfg_for(TABLE5_SHORT_SPAN, dupe_factor=4, seed=9)
    first = generate_pretraining_examples(ids, cfg, vocab, seq_id="a")
    second = generate_pretraining_examples(ids, cfg, vocab, seq_id="a")
    assert first == second
    for seq in first:
        planned = {p for start, length in seq.spans for p in range(start, start + length)}
        for pos, original in enumerate(ids):
            if pos not in planned:
                assert seq.input_ids[pos] == original


def test_same_subseed_identical_outputs():
    vocab = build_vocab()
    ids = _sequence(vocab, n_body=50)
    cfg = cfg_for(TABLE5_SHORT_SPAN, dupe_factor=1, seed=9)
    one = generate_pretraining_examples(ids, cfg, vocab, seq_id="x")[0]
    two = generate_pretraining_examples(ids, cfg, vocab, seq_id="x")[0]
    assert one == two


def test_masked_sequence_record_contract():
    vocab = build_vocab()
    ids = _sequence(vocab, n_body=20)
    cfg = cfg_for(LengthDistribution({2: 1}), dupe_factor=1, seed=5)
    seq = generate_pretraining_examples(ids, cfg, vocab, seq_id="r")[0]
    record = masked_sequence_record("r", 0, seq)
    assert record["seq_id"] == "r" and record["dupe_index"] == 0
    assert LABEL_IGNORE in record["labels"]
    assert all(len(span) == 3 and isinstance(span[2], str) for span in record["spans"])


def test_maskable_positions_excludes_specials():
    vocab = build_vocab()
    ids = [vocab.cls_id, 30, 31, vocab.sep_id, vocab.pad_id]
    assert maskable_positions(ids, vocab) == [1, 2]


def test_config_validation():
    with pytest.raises(ValueError):
        MaskingConfig(TABLE5_SHORT_SPAN, budget_fraction=0.0)
    with pytest.raises(ValueError):
        MaskingConfig(TABLE5_SHORT_SPAN, dupe_factor=0)
    with pytest.raises(ValueError):
        MaskingConfig(TABLE5_SHORT_SPAN, replace_probs=(0.9, 0.2, 0.1))
