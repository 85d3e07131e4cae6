"""Comment records, corpus file I/O, post-level metadata aggregation and
stratified validation splits."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import random
from collections import defaultdict
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)

FIELDS = (
    "comment_id",
    "post_id",
    "text",
    "language",
    "comment_likes",
    "comment_reports",
    "post_likes",
    "post_reports",
    "label",
)
COUNT_FIELDS = ("comment_likes", "comment_reports", "post_likes", "post_reports")


class CorpusError(ValueError):
    """Raised for malformed corpus files or records."""


class SchemaError(CorpusError):
    pass


class RecordError(CorpusError):
    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


@dataclass(frozen=True)
class Comment:
    comment_id: str
    post_id: str
    text: str
    language: str = ""
    comment_likes: int = 0
    comment_reports: int = 0
    post_likes: int = 0
    post_reports: int = 0
    label: int = 0

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label!r}")
        for name in COUNT_FIELDS:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def as_record(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class Corpus(Sequence[Comment]):
    """An ordered, immutable list of comments with unique ids."""

    def __init__(self, comments: Iterable[Comment] = ()):
        self._comments = tuple(comments)
        seen = set()
        for c in self._comments:
            if c.comment_id in seen:
                raise CorpusError(f"duplicate comment_id {c.comment_id!r}")
            seen.add(c.comment_id)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Corpus(self._comments[i])
        return self._comments[i]

    def __len__(self) -> int:
        return len(self._comments)

    def __iter__(self) -> Iterator[Comment]:
        return iter(self._comments)

    def __eq__(self, other) -> bool:
        return isinstance(other, Corpus) and self._comments == other._comments

    def __repr__(self) -> str:
        return f"Corpus(n={len(self)})"

    @property
    def texts(self) -> list[str]:
        return [c.text for c in self._comments]

    @property
    def labels(self) -> list[int]:
        return [c.label for c in self._comments]

    def map_text(self, fn) -> "Corpus":
        """Return a corpus whose texts are ``fn(text)``; everything else kept."""
        return Corpus(replace(c, text=fn(c.text)) for c in self._comments)


def _parse_record(raw: dict, row: int) -> Comment:
    values = {}
    for name in FIELDS:
        value = raw[name]
        if name in COUNT_FIELDS or name == "label":
            if isinstance(value, bool):
                raise RecordError(row, f"{name} is not an integer: {value!r}")
            try:
                value = int(str(value).strip())
            except (TypeError, ValueError):
                raise RecordError(row, f"{name} is not an integer: {value!r}") from None
            if name == "label" and value not in (0, 1):
                raise RecordError(row, f"label must be 0 or 1, got {value}")
            if value < 0:
                raise RecordError(row, f"{name} must be non-negative, got {value}")
        else:
            value = "" if value is None else str(value)
        values[name] = value
    return Comment(**values)


def _check_columns(columns: Iterable[str], where: str) -> None:
    columns = list(columns)
    missing = [f for f in FIELDS if f not in columns]
    if missing:
        raise SchemaError(f"{where}: missing required column(s): {', '.join(missing)}")
    extra = [c for c in columns if c not in FIELDS]
    if extra:
        logger.warning("%s: ignoring unknown column(s): %s", where, ", ".join(extra))


def _infer_format(path: Path) -> str:
    return "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"


def ingest(path, format: str | None = None) -> Corpus:
    """Load a corpus from a CSV or JSONL file.

    CSV rows are numbered from 2 (the header is row 1); JSONL rows from 1.
    """
    path = Path(path)
    fmt = format or _infer_format(path)
    comments = []
    with path.open(encoding="utf-8", newline="") as fh:
        if fmt == "csv":
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                return Corpus()
            _check_columns(reader.fieldnames, str(path))
            for row, raw in enumerate(reader, start=2):
                if None in raw.values() or None in raw:
                    raise RecordError(row, "wrong number of fields")
                comments.append(_parse_record(raw, row))
        elif fmt == "jsonl":
            warned = False
            for row, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    raw = json.loads(line)
                except json.JSONDecodeError as e:
                    raise RecordError(row, f"invalid JSON: {e.msg}") from None
                if not isinstance(raw, dict):
                    raise RecordError(row, "expected a JSON object")
                missing = [f for f in FIELDS if f not in raw]
                if missing:
                    raise SchemaError(f"{path}: row {row}: missing field(s): {', '.join(missing)}")
                if not warned and set(raw) - set(FIELDS):
                    _check_columns(raw.keys(), str(path))
                    warned = True
                comments.append(_parse_record(raw, row))
        else:
            raise ValueError(f"unknown corpus format {fmt!r}")
    try:
        return Corpus(comments)
    except CorpusError as e:
        raise CorpusError(f"{path}: {e}") from None


def dumps(corpus: Corpus, format: str = "csv") -> str:
    buf = io.StringIO(newline="")
    if format == "csv":
        writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for c in corpus:
            writer.writerow(c.as_record())
    elif format == "jsonl":
        for c in corpus:
            buf.write(json.dumps(c.as_record(), ensure_ascii=False) + "\n")
    else:
        raise ValueError(f"unknown corpus format {format!r}")
    return buf.getvalue()


def write(corpus: Corpus, path, format: str | None = None) -> None:
    path = Path(path)
    fmt = format or _infer_format(path)
    path.write_text(dumps(corpus, fmt), encoding="utf-8", newline="")


def aggregate_post_metadata(corpus: Corpus) -> Corpus:
    """Set every comment's post-level likes/reports to the per-post maximum."""
    likes: dict[str, int] = defaultdict(int)
    reports: dict[str, int] = defaultdict(int)
    for c in corpus:
        likes[c.post_id] = max(likes[c.post_id], c.post_likes)
        reports[c.post_id] = max(reports[c.post_id], c.post_reports)
    return Corpus(
        replace(c, post_likes=likes[c.post_id], post_reports=reports[c.post_id])
        for c in corpus
    )


def stratified_split(
    corpus: Corpus,
    validation_fraction: float = 0.1,
    seed: int = 0,
    by_language: bool = False,
) -> tuple[Corpus, Corpus]:
    """Split into (train, validation), stratified by label (or label x language).

    Each stratum contributes ``floor(fraction * size)`` comments to validation.
    Both halves keep the corpus's original order.
    """
    if not 0.0 < validation_fraction < 1.0:
        raise ValueError(f"validation_fraction must be in (0, 1), got {validation_fraction}")
    strata: dict[tuple, list[int]] = defaultdict(list)
    for i, c in enumerate(corpus):
        key = (c.label, c.language) if by_language else (c.label,)
        strata[key].append(i)
    rng = random.Random(seed)
    val_idx: set[int] = set()
    for key in sorted(strata):
        members = strata[key]
        # epsilon guards products like 0.29 * 100 = 28.999...
        n_val = math.floor(validation_fraction * len(members) + 1e-9)
        val_idx.update(rng.sample(members, n_val))
    train = Corpus(c for i, c in enumerate(corpus) if i not in val_idx)
    val = Corpus(c for i, c in enumerate(corpus) if i in val_idx)
    return train, val
