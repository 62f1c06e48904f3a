"""File readers and writers for the three data sources plus label adapters.

Posts arrive as JSONL (Reddit-dump field names: id, created_utc, body);
prices and trends as two-column CSV; external sentiment labels as
post_id,label CSV. Readers validate invariants up front so bad inputs fail
here rather than poisoning statistics downstream.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputFormatError
from .series import DailySeries
from .sentiment import Post, SentimentLabel

DEFAULT_MALFORMED_THRESHOLD = 0.01


@dataclass(frozen=True)
class PriceBar:
    date: date
    close: float

    def __post_init__(self):
        if not self.close > 0:
            raise ValueError(f"close must be positive, got {self.close} on {self.date}")


@dataclass(frozen=True)
class TrendsPoint:
    date: date
    interest: int

    def __post_init__(self):
        if not 0 <= self.interest <= 100:
            raise ValueError(
                f"interest must be in 0..100, got {self.interest} on {self.date}"
            )


@dataclass(frozen=True)
class LabelRecord:
    post_id: str
    label: SentimentLabel


@dataclass(frozen=True)
class PostsReadResult:
    posts: tuple[Post, ...]
    malformed: int
    total_lines: int


def _parse_post(line: str) -> Post:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise ValueError("not an object")
    post_id = obj["id"]
    created = obj["created_utc"]
    body = obj["body"]
    if not isinstance(post_id, str) or not post_id:
        raise ValueError("bad id")
    if not isinstance(created, (int, float)) or isinstance(created, bool):
        raise ValueError("bad created_utc")
    if not isinstance(body, str):
        raise ValueError("bad body")
    return Post(id=post_id, timestamp=int(created), text=body)


def read_posts(
    path: str | Path,
    malformed_threshold: float = DEFAULT_MALFORMED_THRESHOLD,
) -> PostsReadResult:
    """Read a JSONL posts file, sorted by timestamp.

    Malformed lines (bad JSON, missing/bad fields, duplicate ids) are
    counted and skipped; if their fraction exceeds the threshold the whole
    read fails.
    """
    posts: list[Post] = []
    seen: set[str] = set()
    malformed = 0
    total = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            total += 1
            try:
                post = _parse_post(line)
                if post.id in seen:
                    raise ValueError("duplicate id")
                seen.add(post.id)
                posts.append(post)
            except (ValueError, KeyError, json.JSONDecodeError):
                malformed += 1
    if total and malformed / total > malformed_threshold:
        raise InputFormatError(
            f"{malformed} of {total} lines malformed in {path} "
            f"(threshold {malformed_threshold:.0%})"
        )
    posts.sort(key=lambda p: (p.timestamp, p.id))
    return PostsReadResult(tuple(posts), malformed, total)


def _read_two_column_csv(
    path: str | Path, value_header: str
) -> list[tuple[date, str]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise InputFormatError(f"{path}: empty file")
    expected = f"date,{value_header}"
    if lines[0].strip() != expected:
        raise InputFormatError(f"{path}: header must be {expected!r}")
    rows: list[tuple[date, str]] = []
    seen: set[date] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise InputFormatError(f"{path}:{lineno}: expected 2 columns")
        try:
            d = date.fromisoformat(parts[0].strip())
        except ValueError:
            raise InputFormatError(f"{path}:{lineno}: bad date {parts[0]!r}") from None
        if d in seen:
            raise InputFormatError(f"{path}:{lineno}: duplicate date {d.isoformat()}")
        seen.add(d)
        rows.append((d, parts[1].strip()))
    rows.sort(key=lambda r: r[0])
    return rows


def read_prices(path: str | Path) -> DailySeries:
    """CSV with header `date,close`; closes must be positive."""
    bars = []
    for d, raw in _read_two_column_csv(path, "close"):
        try:
            close = float(raw)
        except ValueError:
            raise InputFormatError(f"{path}: bad close {raw!r} on {d}") from None
        try:
            bars.append(PriceBar(d, close))
        except ValueError as exc:
            raise InputFormatError(f"{path}: {exc}") from None
    return DailySeries(
        tuple(b.date for b in bars), tuple(b.close for b in bars)
    )


def read_trends(path: str | Path) -> DailySeries:
    """CSV with header `date,interest`; interest is an integer in 0..100."""
    points = []
    for d, raw in _read_two_column_csv(path, "interest"):
        try:
            interest = int(raw)
        except ValueError:
            raise InputFormatError(f"{path}: bad interest {raw!r} on {d}") from None
        try:
            points.append(TrendsPoint(d, interest))
        except ValueError as exc:
            raise InputFormatError(f"{path}: {exc}") from None
    return DailySeries(
        tuple(p.date for p in points), tuple(float(p.interest) for p in points)
    )


def read_labels(path: str | Path) -> list[LabelRecord]:
    """CSV with header `post_id,label`; labels matched case-insensitively."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != "post_id,label":
        raise InputFormatError(f"{path}: header must be 'post_id,label'")
    records: list[LabelRecord] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise InputFormatError(f"{path}:{lineno}: expected 2 columns")
        post_id = parts[0].strip()
        if not post_id:
            raise InputFormatError(f"{path}:{lineno}: empty post_id")
        if post_id in seen:
            raise InputFormatError(f"{path}:{lineno}: duplicate post_id {post_id!r}")
        seen.add(post_id)
        try:
            label = SentimentLabel.parse(parts[1])
        except ValueError as exc:
            raise InputFormatError(f"{path}:{lineno}: {exc}") from None
        records.append(LabelRecord(post_id, label))
    return records


def comment_volume(posts: Iterable[Post]) -> DailySeries:
    """Posts per UTC day; days with no posts are absent."""
    counts = Counter(p.day for p in posts)
    return DailySeries.from_items((d, float(n)) for d, n in counts.items())


def filter_window(
    posts: Iterable[Post], start: date | None, end: date | None
) -> list[Post]:
    """Posts whose UTC day falls within [start, end]."""
    return [
        p
        for p in posts
        if (start is None or p.day >= start) and (end is None or p.day <= end)
    ]


# canonical writers; read_* of a written file round-trips byte-identically


def write_posts(path: str | Path, posts: Sequence[Post]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in posts:
            fh.write(
                json.dumps(
                    {"id": p.id, "created_utc": p.timestamp, "body": p.text},
                    ensure_ascii=False,
                )
                + "\n"
            )


def _format_close(v: float) -> str:
    text = repr(v)
    return text[:-2] if text.endswith(".0") else text


def write_prices(path: str | Path, series: DailySeries) -> None:
    lines = ["date,close"]
    lines += [
        f"{d.isoformat()},{_format_close(v)}" for d, v in zip(series.dates, series.values)
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_trends(path: str | Path, series: DailySeries) -> None:
    lines = ["date,interest"]
    lines += [
        f"{d.isoformat()},{int(v)}" for d, v in zip(series.dates, series.values)
    ]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_labels(path: str | Path, records: Sequence[LabelRecord]) -> None:
    lines = ["post_id,label"]
    lines += [f"{r.post_id},{r.label.value}" for r in records]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
