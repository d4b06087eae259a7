"""mrcmask: MRC dataset construction, length-matched MLM masking, and scoring.

The library surface mirrors the CLI: tokenize text, build span/cloze
datasets, compute answer-length distributions, plan and apply mask spans,
assemble model-ready sequences, and score prediction files.
"""

__version__ = "0.1.0"

from .tokenization import Vocabulary, Token, load_vocab, tokenize, encode, decode
from .corpus import RawDocument, Paragraph, Sentence, clean_text, split_paragraphs, split_sentences
from .datasets import (
    BucketConfig,
    SpanExample,
    ClozeExample,
    Skip,
    bucket_span_examples,
    build_cloze_example,
    reconstruct_cloze,
    validate_dataset,
)
from .length_stats import (
    LengthDistribution,
    answer_length_histogram,
    to_probabilities,
    load_distribution,
    save_distribution,
    stats_report,
)
from .masking import (
    MaskingConfig,
    MaskPlan,
    MaskedSequence,
    sample_span_length,
    plan_masks,
    apply_masking,
    generate_pretraining_examples,
)
from .assembly import (
    WindowingPolicy,
    InputSequence,
    assemble_span_input,
    assemble_cloze_input,
    pack_pretraining_sequences,
    tokenize_blanked_passage,
)
from .metrics import (
    EvalReport,
    max_common_span,
    span_scores,
    exact_match,
    cloze_scores,
    score_file,
)

__all__ = [
    "__version__",
    "Vocabulary",
    "Token",
    "load_vocab",
    "tokenize",
    "encode",
    "decode",
    "RawDocument",
    "Paragraph",
    "Sentence",
    "clean_text",
    "split_paragraphs",
    "split_sentences",
    "BucketConfig",
    "SpanExample",
    "ClozeExample",
    "Skip",
    "bucket_span_examples",
    "build_cloze_example",
    "reconstruct_cloze",
    "validate_dataset",
    "LengthDistribution",
    "answer_length_histogram",
    "to_probabilities",
    "load_distribution",
    "save_distribution",
    "stats_report",
    "MaskingConfig",
    "MaskPlan",
    "MaskedSequence",
    "sample_span_length",
    "plan_masks",
    "apply_masking",
    "generate_pretraining_examples",
    "WindowingPolicy",
    "InputSequence",
    "assemble_span_input",
    "assemble_cloze_input",
    "pack_pretraining_sequences",
    "tokenize_blanked_passage",
    "EvalReport",
    "max_common_span",
    "span_scores",
    "exact_match",
    "cloze_scores",
    "score_file",
]
