"""Exception types shared across the toolkit.

Every error raised on a contract violation derives from MrcMaskError so the
CLI can map them onto a single "validation failed" exit code.
"""


class MrcMaskError(Exception):
    """Base class for all toolkit errors."""


class VocabError(MrcMaskError):
    """Vocabulary file violates the one-token-per-line contract."""


class DuplicateToken(VocabError):
    def __init__(self, token: str, line: int):
        super().__init__(f"duplicate token {token!r} at line {line}")
        self.token = token
        self.line = line


class MissingSpecial(VocabError):
    def __init__(self, name: str):
        super().__init__(f"required special token {name} missing from vocabulary")
        self.name = name


class UnknownId(MrcMaskError):
    def __init__(self, token_id: int, vocab_size: int):
        super().__init__(f"token id {token_id} out of range for vocabulary of size {vocab_size}")
        self.token_id = token_id


class UnknownToken(MrcMaskError):
    def __init__(self, token: str):
        super().__init__(f"token {token!r} not in vocabulary (map OOV to [UNK] first)")
        self.token = token


class EmptyDataset(MrcMaskError):
    """No records / zero total where a nonempty distribution is required."""


class TaskMismatch(MrcMaskError):
    """Span and cloze datasets mixed in one report."""


class NoPlacement(MrcMaskError):
    """No span length from the distribution fits anywhere in the sequence."""


class QuestionOverflow(MrcMaskError):
    """Question plus special tokens does not leave room for any context."""


class OptionOverflow(MrcMaskError):
    """Cloze option plus special tokens does not leave room for the passage."""


class NoBlanks(MrcMaskError):
    """Blanked passage contains no [BLANKi] marker tokens."""


class EmptyGold(MrcMaskError):
    """Gold answer is empty; per-question scores are undefined."""


class MissingPrediction(MrcMaskError):
    def __init__(self, item_id: str):
        super().__init__(f"no prediction for gold id {item_id!r}")
        self.item_id = item_id


class ArityError(MrcMaskError):
    def __init__(self, item_id: str, expected: int, got: int):
        super().__init__(f"id {item_id!r}: expected {expected} answer letters, got {got}")
        self.item_id = item_id


class IOFailure(MrcMaskError):
    """Input file unreadable or output path unwritable."""
