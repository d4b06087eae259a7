"""Corpus cleaning and segmentation into paragraphs and sentences.

All operations are pure; documents can be processed independently on any
number of workers without changing the output.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass

SOURCE_DOMAINS = ("wikipedia", "academic", "social", "wechat", "news", "other")

# Sentence delimiters: fullwidth and halfwidth commas, fullwidth period,
# semicolons, exclamation and question marks. ASCII "." is deliberately not a
# delimiter (decimal points, version strings).
SENTENCE_DELIMITERS = "，,。；;！!？?"

_TAG_RE = re.compile(r"<[^>]*>")
_IMAGE_MARKER_RE = re.compile(r"\[图片\]|\[image\]", re.IGNORECASE)
_WS_RUN_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class RawDocument:
    id: str
    source_domain: str
    text: str


@dataclass(frozen=True)
class Paragraph:
    doc_id: str
    index: int
    text: str


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    paragraph_index: int
    start: int  # character offsets into the paragraph text
    end: int
    text: str

    @property
    def char_len(self) -> int:
        return len(self.text)


def clean_text(raw: str) -> str:
    """Strip HTML tags and entities, image markers, and excess whitespace.

    Idempotent: entity decoding, tag stripping and marker stripping run to a
    joint fixpoint, so a second pass can never find freshly exposed markup
    (every rewrite strictly shrinks the text, so the loop terminates).
    Whitespace runs containing a newline collapse to a single newline
    (paragraph boundaries survive cleaning); other runs collapse to a single
    space.
    """
    text = raw
    while True:
        new = html.unescape(text)
        new = _TAG_RE.sub("", new)
        new = _IMAGE_MARKER_RE.sub("", new)
        if new == text:
            break
        text = new

    def collapse(match: re.Match) -> str:
        return "\n" if "\n" in match.group(0) else " "

    return _WS_RUN_RE.sub(collapse, text).strip()


def split_paragraphs(doc: RawDocument) -> list[Paragraph]:
    """Split cleaned document text on newline boundaries, dropping empties."""
    paragraphs = []
    for segment in doc.text.split("\n"):
        segment = segment.strip()
        if segment:
            paragraphs.append(Paragraph(doc.id, len(paragraphs), segment))
    return paragraphs


def split_sentences(paragraph: Paragraph) -> list[Sentence]:
    """Split a paragraph at punctuation delimiters, keeping exact offsets.

    Delimiters are excluded from Sentence.text but their positions stay in
    the paragraph, so paragraph.text[start:end] == text always holds and the
    paragraph can be reconstructed around the sentences.
    """
    text = paragraph.text
    sentences = []
    start = 0
    for i, ch in enumerate(text):
        if ch in SENTENCE_DELIMITERS:
            if i > start:
                sentences.append(
                    Sentence(paragraph.doc_id, paragraph.index, start, i, text[start:i])
                )
            start = i + 1
    if start < len(text):
        sentences.append(
            Sentence(paragraph.doc_id, paragraph.index, start, len(text), text[start:])
        )
    return sentences


def ingest_document(record: dict) -> list[Paragraph]:
    """Clean one raw JSONL record and split it into paragraphs."""
    doc = RawDocument(
        id=str(record["id"]),
        source_domain=record.get("source_domain", "other"),
        text=record.get("text", ""),
    )
    cleaned = clean_text(doc.text)
    return split_paragraphs(RawDocument(doc.id, doc.source_domain, cleaned))
