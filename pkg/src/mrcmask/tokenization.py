"""Character-level Chinese WordPiece tokenization.

Chinese text is split into single characters (one character = one token);
non-CJK runs go through greedy longest-match WordPiece with "##" continuation
pieces. The vocabulary file format is the bit-exact contract: UTF-8, one token
per line, id = zero-based line index.
"""

from __future__ import annotations

import io
import os
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import DuplicateToken, MissingSpecial, UnknownId, UnknownToken, VocabError

PAD = "[PAD]"
UNK = "[UNK]"
CLS = "[CLS]"
SEP = "[SEP]"
MASK = "[MASK]"
REQUIRED_SPECIALS = (PAD, UNK, CLS, SEP, MASK)
BLANK_TOKENS = tuple(f"[BLANK{i}]" for i in range(1, 10))

MAX_CHARS_PER_WORD = 100


def is_cjk_char(ch: str) -> bool:
    """CJK Unified Ideographs plus Extension A."""
    cp = ord(ch)
    return 0x4E00 <= cp <= 0x9FFF or 0x3400 <= cp <= 0x4DBF


def _is_punctuation(ch: str) -> bool:
    cp = ord(ch)
    # ASCII punctuation ranges double as a fast path; everything in the
    # Unicode P*/S* categories also splits words.
    if 33 <= cp <= 47 or 58 <= cp <= 64 or 91 <= cp <= 96 or 123 <= cp <= 126:
        return True
    return unicodedata.category(ch).startswith(("P", "S"))


@dataclass(frozen=True)
class Token:
    text: str
    id: int
    is_special: bool = False
    is_cjk: bool = False


class Vocabulary:
    """Immutable token<->id table; safe to share across workers."""

    def __init__(self, entries: list[str]):
        index: dict[str, int] = {}
        for i, tok in enumerate(entries):
            if not tok:
                raise VocabError(f"empty token at line {i + 1}")
            if tok in index:
                raise DuplicateToken(tok, i + 1)
            index[tok] = i
        for name in REQUIRED_SPECIALS:
            if name not in index:
                raise MissingSpecial(name)
        self.entries = tuple(entries)
        self.index = index
        self.pad_id = index[PAD]
        self.unk_id = index[UNK]
        self.cls_id = index[CLS]
        self.sep_id = index[SEP]
        self.mask_id = index[MASK]
        self.blank_ids = {tok: index[tok] for tok in BLANK_TOKENS if tok in index}
        reserved = set(REQUIRED_SPECIALS) | set(BLANK_TOKENS)
        self.special_ids = frozenset(index[t] for t in reserved if t in index)
        # Pool for the 10% random-replacement branch: never specials or blanks.
        self.non_special_ids = tuple(i for i, t in enumerate(entries) if t not in reserved)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def lookup(self, token: str) -> int:
        if token not in self.index:
            raise UnknownToken(token)
        return self.index[token]

    def token_text(self, token_id: int) -> str:
        if not 0 <= token_id < len(self.entries):
            raise UnknownId(token_id, len(self.entries))
        return self.entries[token_id]

    def blank_id(self, n: int) -> int:
        name = f"[BLANK{n}]"
        if name not in self.index:
            raise MissingSpecial(name)
        return self.index[name]


def load_vocab(source: Union[str, bytes, io.IOBase, os.PathLike]) -> Vocabulary:
    """Load a vocabulary from a path, bytes, or binary/text stream."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif hasattr(source, "read"):
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    else:
        with open(source, "rb") as f:
            text = f.read().decode("utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return Vocabulary([line.rstrip("\r") for line in lines])


def _wordpiece(word: str, vocab: Vocabulary) -> list[str]:
    """Greedy longest-match segmentation of one word; [UNK] when no cover exists."""
    if len(word) > MAX_CHARS_PER_WORD:
        return [UNK]
    pieces = []
    start = 0
    while start < len(word):
        end = len(word)
        piece = None
        while start < end:
            cand = word[start:end]
            if start > 0:
                cand = "##" + cand
            if cand in vocab:
                piece = cand
                break
            end -= 1
        if piece is None:
            return [UNK]
        pieces.append(piece)
        start = end
    return pieces


def _segment(text: str):
    """Yield (unit, kind, offset) where kind is 'cjk', 'punct' or 'word'.

    Whitespace and control characters separate units and are dropped.
    Punctuation always forms a single-character unit, so bracketed special
    markers in raw text can never assemble into a vocabulary special token.
    """
    word_start = None
    for i, ch in enumerate(text):
        if ch.isspace() or unicodedata.category(ch) in ("Cc", "Cf"):
            if word_start is not None:
                yield text[word_start:i], "word", word_start
                word_start = None
            continue
        if is_cjk_char(ch):
            if word_start is not None:
                yield text[word_start:i], "word", word_start
                word_start = None
            yield ch, "cjk", i
        elif _is_punctuation(ch):
            if word_start is not None:
                yield text[word_start:i], "word", word_start
                word_start = None
            yield ch, "punct", i
        else:
            if word_start is None:
                word_start = i
    if word_start is not None:
        yield text[word_start:], "word", word_start


def tokenize(text: str, vocab: Vocabulary) -> list[Token]:
    """Tokenize text: one token per CJK character, WordPiece elsewhere.

    Total function: unmatched material maps to [UNK], never raises.
    """
    tokens, _ = tokenize_with_offsets(text, vocab)
    return tokens


def tokenize_with_offsets(text: str, vocab: Vocabulary) -> tuple[list[Token], list[tuple[int, int]]]:
    """tokenize() plus the [start, end) character span of every token.

    Offsets refer to the NFC-normalized text; [UNK] tokens keep the span of
    the material they replaced.
    """
    text = unicodedata.normalize("NFC", text)
    tokens: list[Token] = []
    offsets: list[tuple[int, int]] = []
    for unit, kind, off in _segment(text):
        if kind == "cjk":
            if unit in vocab:
                tokens.append(Token(unit, vocab.index[unit], is_cjk=True))
            else:
                tokens.append(Token(UNK, vocab.unk_id, is_special=True))
            offsets.append((off, off + 1))
        elif kind == "punct":
            if unit in vocab:
                tokens.append(Token(unit, vocab.index[unit]))
            else:
                tokens.append(Token(UNK, vocab.unk_id, is_special=True))
            offsets.append((off, off + 1))
        else:
            pieces = _wordpiece(unit, vocab)
            if pieces == [UNK]:
                tokens.append(Token(UNK, vocab.unk_id, is_special=True))
                offsets.append((off, off + len(unit)))
            else:
                pos = off
                for piece in pieces:
                    span = len(piece) - 2 if piece.startswith("##") else len(piece)
                    tokens.append(Token(piece, vocab.index[piece]))
                    offsets.append((pos, pos + span))
                    pos += span
    return tokens, offsets


def encode(tokens: Iterable[Union[Token, str]], vocab: Vocabulary) -> list[int]:
    """Token (or token string) sequence to ids; strings must be in-vocabulary."""
    ids = []
    for tok in tokens:
        if isinstance(tok, Token):
            ids.append(tok.id)
        else:
            ids.append(vocab.lookup(tok))
    return ids


def decode(ids: Iterable[int], vocab: Vocabulary) -> str:
    """Ids back to text: CJK joined without separator, "##" stripped.

    Adjacent non-CJK word pieces are separated by one space; exact whitespace
    of whitespace-bearing languages is not reconstructed.
    """
    out: list[str] = []
    prev_joinable = False  # previous piece was a non-CJK word token
    for token_id in ids:
        text = vocab.token_text(token_id)
        if text.startswith("##"):
            out.append(text[2:])
            prev_joinable = True
            continue
        is_word = bool(text) and not is_cjk_char(text[0]) and text[0].isalnum()
        if is_word and prev_joinable:
            out.append(" ")
        out.append(text)
        prev_joinable = is_word
    return "".join(out)
