"""Small shared helpers: seeded RNG derivation, rounding, JSONL streaming."""

from __future__ import annotations

import hashlib
import json
import random
from decimal import Decimal, ROUND_HALF_UP
from typing import Any, Iterable, Iterator

from .errors import IOFailure


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 64-bit sub-seed from a master seed and any hashable id parts.

    The derivation is a pure function of its arguments, so records can be
    processed on any number of workers in any order and still draw the same
    random streams.
    """
    h = hashlib.sha256()
    h.update(str(int(master_seed)).encode("utf-8"))
    for part in parts:
        h.update(b"\x1f")
        h.update(str(part).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big")


def derive_rng(master_seed: int, *parts) -> random.Random:
    return random.Random(derive_seed(master_seed, *parts))


def round_half_up(x: float) -> int:
    """round() with ties away from zero (Python's round() is banker's)."""
    return int(Decimal(repr(x)).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def percent_str(count: int, total: int) -> str:
    """Exact percentage of count/total, round-half-up to 2 decimals, e.g. '51.52'."""
    pct = (Decimal(count) * 100) / Decimal(total)
    return str(pct.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def read_jsonl(path) -> Iterator[dict]:
    """Stream records from a JSONL file, skipping blank lines."""
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    with f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise IOFailure(f"{path}:{lineno}: invalid JSON: {exc}") from exc


def read_jsonl_lenient(path) -> Iterator[dict | None]:
    """Like read_jsonl but yields None for undecodable lines instead of raising."""
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    with f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                yield None
                continue
            yield record if isinstance(record, dict) else None


def write_jsonl(path, records: Iterable[dict]) -> int:
    """Write records one JSON object per line; returns the record count."""
    n = 0
    try:
        f = open(path, "w", encoding="utf-8")
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc
    with f:
        for rec in records:
            f.write(json_line(rec))
            f.write("\n")
            n += 1
    return n


def json_line(obj: Any) -> str:
    """Canonical single-line JSON used for all outputs (byte-stable)."""
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))
