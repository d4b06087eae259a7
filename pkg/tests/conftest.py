import random

import pytest

from mrcmask.tokenization import BLANK_TOKENS, REQUIRED_SPECIALS, Vocabulary

# Small pool of common CJK characters for synthetic corpora.
CJK_POOL = [chr(cp) for cp in range(0x4E00, 0x4E00 + 200)]


def build_vocab(extra=(), with_blanks=True) -> Vocabulary:
    entries = list(REQUIRED_SPECIALS)
    if with_blanks:
        entries += list(BLANK_TOKENS)
    entries += CJK_POOL
    for tok in extra:
        if tok not in entries:
            entries.append(tok)
    return Vocabulary(entries)


@pytest.fixture
def vocab() -> Vocabulary:
    return build_vocab(extra=["流", "行", "病", "学", "领", "域", "，", "。", "epi", "##demic"])


def synth_sentence(rng: random.Random, length: int) -> str:
    return "".join(rng.choice(CJK_POOL) for _ in range(length))


def synth_paragraph(rng: random.Random, n_sentences: int, min_len: int, max_len: int) -> str:
    """Paragraph whose sentences all fall inside [min_len, max_len]."""
    parts = []
    for _ in range(n_sentences):
        parts.append(synth_sentence(rng, rng.randint(min_len, max_len)))
        parts.append(rng.choice("，。；！？"))
    return "".join(parts)
